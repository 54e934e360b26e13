#include "spinrelay/expm.hpp"

#include <array>
#include <cmath>

#include "spinrelay/errors.hpp"

namespace spinrelay {
namespace {

using Matrix = Eigen::MatrixXcd;

double one_norm(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// 1-norm bounds below which the degree-m approximant is accurate to unit roundoff.
constexpr std::array<double, 4> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0};
constexpr double kTheta13 = 5.371920351148152e0;

Matrix solve_pade(const Matrix& u, const Matrix& v) {
  return (v - u).partialPivLu().solve(v + u);
}

template <std::size_t M>
Matrix pade_low(const Matrix& a, const std::array<double, M + 1>& b) {
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix even = b[0] * ident;
  Matrix odd = b[1] * ident;
  Matrix power = ident;
  for (std::size_t k = 2; k <= M; k += 2) {
    power = power * a2;
    even += b[k] * power;
    if (k + 1 <= M) odd += b[k + 1] * power;
  }
  return solve_pade(a * odd, even);
}

Matrix pade13(const Matrix& a) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const Matrix u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Matrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const Matrix v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return solve_pade(u, v);
}

}  // namespace

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("expm needs a square matrix");
  if (a.rows() == 0) return a;
  const double norm = one_norm(a);
  if (!std::isfinite(norm)) throw ConfigError("expm of a non-finite matrix");

  if (norm <= kTheta[0]) return pade_low<3>(a, {120.0, 60.0, 12.0, 1.0});
  if (norm <= kTheta[1]) return pade_low<5>(a, {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0});
  if (norm <= kTheta[2]) {
    return pade_low<7>(a, {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0});
  }
  if (norm <= kTheta[3]) {
    return pade_low<9>(a, {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                           2162160.0, 110880.0, 3960.0, 90.0, 1.0});
  }

  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  const Matrix scaled = a * std::ldexp(1.0, -squarings);
  Matrix result = pade13(scaled);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

}  // namespace spinrelay
