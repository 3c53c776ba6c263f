#pragma once

#include <array>

#include <Eigen/Core>

namespace poroperm::element {

/// Six-point rule exact for degree 4 on the reference triangle. Rows hold
/// barycentric coordinates; weights sum to 1 and are scaled by the area.
template <typename Scalar>
struct Quadrature6 {
  static Eigen::Matrix<Scalar, 6, 3> points() {
    const Scalar a = Scalar(0.445948490915965), b = Scalar(0.091576213509771);
    Eigen::Matrix<Scalar, 6, 3> p;
    p << a, a, Scalar(1) - 2 * a,  //
        a, Scalar(1) - 2 * a, a,   //
        Scalar(1) - 2 * a, a, a,   //
        b, b, Scalar(1) - 2 * b,   //
        b, Scalar(1) - 2 * b, b,   //
        Scalar(1) - 2 * b, b, b;
    return p;
  }
  static Eigen::Matrix<Scalar, 6, 1> weights() {
    const Scalar wa = Scalar(0.223381589678011), wb = Scalar(0.109951743655322);
    return (Eigen::Matrix<Scalar, 6, 1>() << wa, wa, wa, wb, wb, wb).finished();
  }
};

template <typename Scalar>
using Corners = Eigen::Matrix<Scalar, 3, 2>;

/// Gradients of the barycentric coordinates (rows) and the signed area.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 2> barycentric_gradients(const Corners<Scalar>& x, Scalar* area = nullptr) {
  const Scalar x10 = x(1, 0) - x(0, 0), y10 = x(1, 1) - x(0, 1);
  const Scalar x20 = x(2, 0) - x(0, 0), y20 = x(2, 1) - x(0, 1);
  const Scalar det = x10 * y20 - x20 * y10;
  if (area) *area = det / 2;
  Eigen::Matrix<Scalar, 3, 2> g;
  g.row(1) << y20 / det, -x20 / det;
  g.row(2) << -y10 / det, x10 / det;
  g.row(0) = -g.row(1) - g.row(2);
  return g;
}

/// P2 shape values at barycentric point l: vertices 0-2, then mid(0,1),
/// mid(1,2), mid(2,0).
template <typename Scalar>
Eigen::Matrix<Scalar, 6, 1> p2_values(const Eigen::Matrix<Scalar, 1, 3>& l) {
  Eigen::Matrix<Scalar, 6, 1> n;
  for (int i = 0; i < 3; ++i) n[i] = l[i] * (2 * l[i] - 1);
  n[3] = 4 * l[0] * l[1];
  n[4] = 4 * l[1] * l[2];
  n[5] = 4 * l[2] * l[0];
  return n;
}

/// P2 shape gradients (rows) at barycentric point l.
template <typename Scalar>
Eigen::Matrix<Scalar, 6, 2> p2_gradients(const Eigen::Matrix<Scalar, 1, 3>& l, const Eigen::Matrix<Scalar, 3, 2>& g) {
  Eigen::Matrix<Scalar, 6, 2> d;
  for (int i = 0; i < 3; ++i) d.row(i) = (4 * l[i] - 1) * g.row(i);
  d.row(3) = 4 * (l[0] * g.row(1) + l[1] * g.row(0));
  d.row(4) = 4 * (l[1] * g.row(2) + l[2] * g.row(1));
  d.row(5) = 4 * (l[2] * g.row(0) + l[0] * g.row(2));
  return d;
}

/// Elasticity stiffness, local dofs interleaved as [ux0, uy0, ux1, ...].
template <typename Scalar>
Eigen::Matrix<Scalar, 12, 12> elasticity(const Corners<Scalar>& x, Scalar lambda, Scalar mu) {
  Scalar area;
  const auto g = barycentric_gradients(x, &area);
  const auto pts = Quadrature6<Scalar>::points();
  const auto w = Quadrature6<Scalar>::weights();
  Eigen::Matrix<Scalar, 3, 3> d;
  d << lambda + 2 * mu, lambda, 0, lambda, lambda + 2 * mu, 0, 0, 0, mu;
  Eigen::Matrix<Scalar, 12, 12> k = Eigen::Matrix<Scalar, 12, 12>::Zero();
  for (int q = 0; q < 6; ++q) {
    const auto dn = p2_gradients<Scalar>(pts.row(q), g);
    Eigen::Matrix<Scalar, 3, 12> strain = Eigen::Matrix<Scalar, 3, 12>::Zero();
    for (int j = 0; j < 6; ++j) {
      strain(0, 2 * j) = dn(j, 0);
      strain(1, 2 * j + 1) = dn(j, 1);
      strain(2, 2 * j) = dn(j, 1);
      strain(2, 2 * j + 1) = dn(j, 0);
    }
    k.noalias() += (w[q] * area) * strain.transpose() * d * strain;
  }
  return k;
}

/// Coupling (psi_i, div phi_j): P1 rows, interleaved P2 displacement columns.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 12> divergence(const Corners<Scalar>& x) {
  Scalar area;
  const auto g = barycentric_gradients(x, &area);
  const auto pts = Quadrature6<Scalar>::points();
  const auto w = Quadrature6<Scalar>::weights();
  Eigen::Matrix<Scalar, 3, 12> b = Eigen::Matrix<Scalar, 3, 12>::Zero();
  for (int q = 0; q < 6; ++q) {
    const auto dn = p2_gradients<Scalar>(pts.row(q), g);
    Eigen::Matrix<Scalar, 1, 12> div;
    for (int j = 0; j < 6; ++j) div.template segment<2>(2 * j) = dn.row(j);
    b.noalias() += (w[q] * area) * pts.row(q).transpose() * div;
  }
  return b;
}

/// Unit-coefficient P1 Laplacian (grad psi_i, grad psi_j).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> laplacian(const Corners<Scalar>& x) {
  Scalar area;
  const auto g = barycentric_gradients(x, &area);
  return area * g * g.transpose();
}

}  // namespace poroperm::element
