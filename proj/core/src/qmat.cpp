#include "unruh_steer/qmat.hpp"

#include "unruh_steer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace unruh_steer {

namespace {

constexpr complex kI{0.0, 1.0};

const std::array<Mat2c, 4>& pauli_table() {
  static const std::array<Mat2c, 4> table = [] {
    std::array<Mat2c, 4> p;
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -kI, kI, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return table;
}

Mat4c kron(const Mat2c& x, const Mat2c& y) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return out;
}

template <typename Values, typename Vectors>
void sort_descending(Values& values, Vectors& vectors) {
  constexpr int n = static_cast<int>(std::tuple_size_v<Values>);
  std::array<int, n> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return values[x] > values[y]; });
  Values sorted_values;
  Vectors sorted_vectors;
  for (int k = 0; k < n; ++k) {
    sorted_values[k] = values[order[k]];
    sorted_vectors.col(k) = vectors.col(order[k]);
  }
  values = sorted_values;
  vectors = sorted_vectors;
}

}  // namespace

std::array<double, 15> FanoState::to_array() const {
  std::array<double, 15> v{};
  for (int i = 0; i < 3; ++i) {
    v[i] = a[i];
    v[3 + i] = b[i];
    for (int j = 0; j < 3; ++j) v[6 + 3 * i + j] = T(i, j);
  }
  return v;
}

FanoState FanoState::from_array(const std::array<double, 15>& v) {
  FanoState s;
  for (int i = 0; i < 3; ++i) {
    s.a[i] = v[i];
    s.b[i] = v[3 + i];
    for (int j = 0; j < 3; ++j) s.T(i, j) = v[6 + 3 * i + j];
  }
  return s;
}

FanoState operator+(const FanoState& x, const FanoState& y) {
  return FanoState{x.a + y.a, x.b + y.b, x.T + y.T};
}

FanoState operator*(double s, const FanoState& x) { return FanoState{s * x.a, s * x.b, s * x.T}; }

double max_abs_difference(const FanoState& x, const FanoState& y) {
  return std::max({(x.a - y.a).cwiseAbs().maxCoeff(), (x.b - y.b).cwiseAbs().maxCoeff(),
                   (x.T - y.T).cwiseAbs().maxCoeff()});
}

UnitVector::UnitVector(const Vec3& v) : v_(v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > 1e-12)
    throw Error(ErrorCode::kDomain, "vector is not of unit length");
}

UnitVector UnitVector::normalized(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::kDomain, "cannot normalize a zero vector");
  return UnitVector(v / n, Unchecked{});
}

QubitBasis QubitBasis::from_axis(const UnitVector& axis) {
  const Vec3& u = axis.vec();
  Eigen::Vector2cd v;
  if (u.z() >= 0.0)
    v << 1.0 + u.z(), complex(u.x(), u.y());
  else
    v << complex(u.x(), -u.y()), 1.0 - u.z();
  v.normalize();
  Eigen::Vector2cd w;
  w << -std::conj(v[1]), std::conj(v[0]);
  return QubitBasis{v, w};
}

const Mat2c& pauli(int i) { return pauli_table().at(static_cast<std::size_t>(i)); }

Mat4c pauli_product(int i, int j) { return kron(pauli(i), pauli(j)); }

DensityMatrix4 fano_to_matrix(const FanoState& s) {
  Mat4c m;
  // Entries of (1/4) sum c_ij s_i x s_j written out; rows/cols |00>,|01>,|10>,|11>.
  const double a1 = s.a[0], a2 = s.a[1], a3 = s.a[2];
  const double b1 = s.b[0], b2 = s.b[1], b3 = s.b[2];
  const Mat3& T = s.T;
  const complex bm(b1, -b2);  // b1 - i b2
  const complex am(a1, -a2);
  const complex t_pm(T(0, 0) + T(1, 1), T(0, 1) - T(1, 0));   // |01><10|
  const complex t_mm(T(0, 0) - T(1, 1), -(T(0, 1) + T(1, 0)));  // |00><11|
  const complex t13m(T(0, 2), -T(1, 2));                        // (T_13 - i T_23)
  const complex t31m(T(2, 0), -T(2, 1));                        // (T_31 - i T_32)

  m(0, 0) = 1 + a3 + b3 + T(2, 2);
  m(1, 1) = 1 + a3 - b3 - T(2, 2);
  m(2, 2) = 1 - a3 + b3 - T(2, 2);
  m(3, 3) = 1 - a3 - b3 + T(2, 2);
  m(0, 1) = bm + t31m;
  m(2, 3) = bm - t31m;
  m(0, 2) = am + t13m;
  m(1, 3) = am - t13m;
  m(0, 3) = t_mm;
  m(1, 2) = t_pm;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  return m / 4.0;
}

FanoState matrix_to_fano(const DensityMatrix4& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw Error(ErrorCode::kNonHermitian, "matrix is not Hermitian within 1e-9");
  FanoState s;
  const auto coefficient = [&](int i, int j) { return (m * pauli_product(i, j)).trace().real(); };
  for (int i = 0; i < 3; ++i) {
    s.a[i] = coefficient(i + 1, 0);
    s.b[i] = coefficient(0, i + 1);
    for (int j = 0; j < 3; ++j) s.T(i, j) = coefficient(i + 1, j + 1);
  }
  return s;
}

QubitBloch partial_trace(const DensityMatrix4& m, Side keep) {
  Mat2c r = Mat2c::Zero();
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int k = 0; k < 2; ++k)
        r(x, y) += keep == Side::B ? m(2 * k + x, 2 * k + y) : m(2 * x + k, 2 * y + k);
  return matrix_to_bloch(r);
}

Mat2c bloch_to_matrix(const QubitBloch& q) {
  return 0.5 * (pauli(0) + q.r[0] * pauli(1) + q.r[1] * pauli(2) + q.r[2] * pauli(3));
}

QubitBloch matrix_to_bloch(const Mat2c& m) {
  return QubitBloch{Vec3(2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real())};
}

DensityMatrix4 dephase_B(const DensityMatrix4& m, const QubitBasis& basis) {
  const double overlap = std::abs(basis.e0.dot(basis.e1));
  if (overlap > 1e-10 || std::abs(basis.e0.norm() - 1.0) > 1e-10 || std::abs(basis.e1.norm() - 1.0) > 1e-10)
    throw Error(ErrorCode::kDegenerateBasis, "basis vectors are not orthonormal within 1e-10");
  DensityMatrix4 out = DensityMatrix4::Zero();
  for (const auto* e : {&basis.e0, &basis.e1}) {
    const Mat4c proj = kron(pauli(0), (*e) * e->adjoint());
    out += proj * m * proj;
  }
  return out;
}

DensityMatrix4 dephase_B(const DensityMatrix4& m, const UnitVector& axis) {
  const Mat2c n_sigma = axis[0] * pauli(1) + axis[1] * pauli(2) + axis[2] * pauli(3);
  DensityMatrix4 out = DensityMatrix4::Zero();
  for (double sign : {1.0, -1.0}) {
    const Mat4c proj = kron(pauli(0), 0.5 * (pauli(0) + sign * n_sigma));
    out += proj * m * proj;
  }
  return out;
}

Eigen2 hermitian_eigen(const Mat2c& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const complex w = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(w));
  Eigen2 out;
  out.values = {mean + radius, mean - radius};
  if (std::abs(w) == 0.0) {
    out.vectors = Mat2c::Identity();
    if (d > a) out.vectors << 0, 1, 1, 0;
    return out;
  }
  const double lambda = out.values[0];
  Eigen::Vector2cd v1(w, lambda - a);
  Eigen::Vector2cd v2(lambda - d, std::conj(w));
  Eigen::Vector2cd v = v1.norm() >= v2.norm() ? v1 : v2;
  v.normalize();
  out.vectors.col(0) = v;
  out.vectors.col(1) = Eigen::Vector2cd(-std::conj(v[1]), std::conj(v[0]));
  return out;
}

Eigen4 hermitian_eigen(const Mat4c& input) {
  Mat4c h = 0.5 * (input + input.adjoint());
  Mat4c u = Mat4c::Identity();
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += std::norm(h(p, q));
    if (off <= 1e-34 * scale * scale) break;

    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const double r = std::abs(h(p, q));
        if (r <= 1e-300) continue;
        const complex phase = h(p, q) / r;
        const double alpha = h(p, p).real();
        const double beta = h(q, q).real();
        const double zeta = (beta - alpha) / (2.0 * r);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // V restricted to (p,q) is diag(phase, 1) * [[c, s], [-s, c]].
        const complex v_pp = c * phase, v_pq = s * phase, v_qp = -s, v_qq = c;

        for (int k = 0; k < 4; ++k) {
          const complex hkp = h(k, p), hkq = h(k, q);
          h(k, p) = hkp * v_pp + hkq * v_qp;
          h(k, q) = hkp * v_pq + hkq * v_qq;
          const complex ukp = u(k, p), ukq = u(k, q);
          u(k, p) = ukp * v_pp + ukq * v_qp;
          u(k, q) = ukp * v_pq + ukq * v_qq;
        }
        for (int k = 0; k < 4; ++k) {
          const complex hpk = h(p, k), hqk = h(q, k);
          h(p, k) = std::conj(v_pp) * hpk + std::conj(v_qp) * hqk;
          h(q, k) = std::conj(v_pq) * hpk + std::conj(v_qq) * hqk;
        }
        h(p, q) = h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
      }
    }
  }

  Eigen4 out;
  for (int k = 0; k < 4; ++k) out.values[k] = h(k, k).real();
  out.vectors = u;
  sort_descending(out.values, out.vectors);
  return out;
}

double trace_norm(const Mat4c& m) {
  const auto e = hermitian_eigen(m);
  double sum = 0.0;
  for (double v : e.values) sum += std::abs(v);
  return sum;
}

double trace_norm(const Mat2c& m) {
  const auto e = hermitian_eigen(m);
  return std::abs(e.values[0]) + std::abs(e.values[1]);
}

double min_eigenvalue(const Mat4c& m) { return hermitian_eigen(m).values[3]; }

bool is_physical(const DensityMatrix4& m, double tol) { return min_eigenvalue(m) >= -tol; }

bool is_physical(const FanoState& s, double tol) { return is_physical(fano_to_matrix(s), tol); }

double concurrence(const DensityMatrix4& m) {
  const auto e = hermitian_eigen(m);
  if (e.values[3] < -1e-8) throw Error(ErrorCode::kNotPositive, "concurrence needs a positive semidefinite state");

  Eigen::Vector4d root;
  for (int k = 0; k < 4; ++k) root[k] = std::sqrt(std::max(e.values[k], 0.0));
  const Mat4c sqrt_rho = e.vectors * root.cast<complex>().asDiagonal() * e.vectors.adjoint();
  const Mat4c flip = pauli_product(2, 2);
  const Mat4c flipped = flip * m.conjugate() * flip;
  const auto r = hermitian_eigen(Mat4c(sqrt_rho * flipped * sqrt_rho));

  std::array<double, 4> lambda;
  for (int k = 0; k < 4; ++k) lambda[k] = std::sqrt(std::max(r.values[k], 0.0));
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace unruh_steer
