#include "mmadv/polybasis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmadv {

namespace {

// Legendre polynomial P_n and derivative P_n' at x via the three-term
// recurrence.
void legendre(int n, double x, double& pn, double& dpn) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    pn = p0;
    dpn = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  // (1-x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x))
  const double one_m_x2 = 1.0 - x * x;
  if (std::abs(one_m_x2) > 1e-14) {
    dpn = n * (p0 - x * p1) / one_m_x2;
  } else {
    dpn = x > 0 ? n * (n + 1.0) / 2.0 : (n % 2 == 0 ? -1.0 : 1.0) * n * (n + 1.0) / 2.0;
  }
}

}  // namespace

QuadratureRule gauss_rule(int q) {
  if (q < 1) throw std::invalid_argument("gauss_rule: q must be >= 1");
  QuadratureRule rule;
  rule.points.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    // Chebyshev initial guess, refined by Newton iteration on P_q.
    double x = std::cos(M_PI * (4.0 * i + 3.0) / (4.0 * q + 2.0));
    double pn = 0.0, dpn = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(q, x, pn, dpn);
      const double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(q, x, pn, dpn);
    rule.points[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dpn * dpn);
  }
  // ascending order
  for (int i = 0; i < q / 2; ++i) {
    std::swap(rule.points[i], rule.points[q - 1 - i]);
    std::swap(rule.weights[i], rule.weights[q - 1 - i]);
  }
  return rule;
}

NodalEdgeBasis::NodalEdgeBasis(int p) : p_(p) {
  if (p < 1) throw std::invalid_argument("NodalEdgeBasis: degree must be >= 1");
  const int n = p + 1;
  nodes_.resize(n);
  weights_.resize(n);

  // GLL nodes: endpoints plus the roots of P_p'. Newton iteration on
  // (1-x^2) P_p'(x) with Chebyshev-GLL initial guesses.
  nodes_[0] = -1.0;
  nodes_[p] = 1.0;
  for (int i = 1; i < p; ++i) {
    double x = -std::cos(M_PI * i / p);
    for (int it = 0; it < 100; ++it) {
      // f = P_p'(x); f' = P_p''(x) from the Legendre ODE:
      // (1-x^2) P'' - 2x P' + p(p+1) P = 0
      double pn, dpn;
      legendre(p, x, pn, dpn);
      const double d2pn = (2.0 * x * dpn - p * (p + 1.0) * pn) / (1.0 - x * x);
      const double dx = dpn / d2pn;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes_[i] = x;
  }
  // enforce exact symmetry about 0
  for (int i = 0; i < n / 2; ++i) {
    const double s = 0.5 * (nodes_[n - 1 - i] - nodes_[i]);
    nodes_[i] = -s;
    nodes_[n - 1 - i] = s;
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;

  // GLL weights w_k = 2 / (p(p+1) P_p(x_k)^2)
  for (int i = 0; i < n; ++i) {
    double pn, dpn;
    legendre(p, nodes_[i], pn, dpn);
    weights_[i] = 2.0 / (p * (p + 1.0) * pn * pn);
  }

  // barycentric weights
  bary_.resize(n);
  for (int i = 0; i < n; ++i) {
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) w *= nodes_[i] - nodes_[j];
    }
    bary_[i] = 1.0 / w;
  }

  // differentiation matrix from barycentric weights
  deriv_.resize(n, n);
  for (int j = 0; j < n; ++j) {
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      deriv_(j, i) = (bary_[i] / bary_[j]) / (nodes_[j] - nodes_[i]);
      diag -= deriv_(j, i);
    }
    deriv_(j, j) = diag;
  }

  // e_i = -sum_{k<=i} l_k'; expand in the nodal basis using l_k'(xi_j)
  edge_coeff_.resize(n, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < n; ++j) {
      double c = 0.0;
      for (int k = 0; k <= i; ++k) c -= deriv_(j, k);
      edge_coeff_(j, i) = c;
    }
  }
}

void NodalEdgeBasis::check_nodal_index(int i) const {
  if (i < 0 || i > p_)
    throw std::out_of_range("nodal basis index " + std::to_string(i) +
                            " out of range for degree " + std::to_string(p_));
}

double NodalEdgeBasis::eval_nodal(int i, double xi) const {
  check_nodal_index(i);
  const int n = p_ + 1;
  for (int j = 0; j < n; ++j) {
    if (std::abs(xi - nodes_[j]) < 1e-14) return i == j ? 1.0 : 0.0;
  }
  double num = bary_[i] / (xi - nodes_[i]);
  double den = 0.0;
  for (int j = 0; j < n; ++j) den += bary_[j] / (xi - nodes_[j]);
  return num / den;
}

Eigen::VectorXd NodalEdgeBasis::eval_all_nodal(double xi) const {
  const int n = p_ + 1;
  Eigen::VectorXd out(n);
  for (int j = 0; j < n; ++j) {
    if (std::abs(xi - nodes_[j]) < 1e-14) {
      out.setZero();
      out[j] = 1.0;
      return out;
    }
  }
  double den = 0.0;
  for (int j = 0; j < n; ++j) {
    out[j] = bary_[j] / (xi - nodes_[j]);
    den += out[j];
  }
  out /= den;
  return out;
}

double NodalEdgeBasis::eval_nodal_deriv(int i, double xi) const {
  check_nodal_index(i);
  // l_i' has degree p-1 and is known at the nodes through the
  // differentiation matrix; interpolate those values.
  const Eigen::VectorXd l = eval_all_nodal(xi);
  return deriv_.col(i).dot(l);
}

double NodalEdgeBasis::eval_edge(int i, double xi) const {
  if (i < 0 || i >= p_)
    throw std::out_of_range("edge basis index " + std::to_string(i) +
                            " out of range for degree " + std::to_string(p_));
  const Eigen::VectorXd l = eval_all_nodal(xi);
  return edge_coeff_.col(i).dot(l);
}

Eigen::VectorXd NodalEdgeBasis::eval_all_edge(double xi) const {
  const Eigen::VectorXd l = eval_all_nodal(xi);
  return edge_coeff_.transpose() * l;
}

}  // namespace mmadv
