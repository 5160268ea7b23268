#include "opexp/expm.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "opexp/errors.hpp"
#include "opexp/spectral.hpp"

namespace opexp {
namespace {

// Largest 1-norm for which the degree-m approximant has relative backward
// error below the double unit roundoff (Higham, 2005).
constexpr std::array<int, 5> kPadeDegrees{3, 5, 7, 9, 13};
constexpr std::array<double, 5> kPadeThetas{1.495585217958292e-2, 2.539398330063230e-1,
                                            9.504178996162932e-1, 2.097847961257068e0,
                                            5.371920351148152e0};
constexpr double kUnitRoundoff = 0x1.0p-53;

constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                       25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                        30270240.0,    2162160.0,    110880.0,     3960.0,
                                        90.0,          1.0};
constexpr std::array<double, 14> kPade13{64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                         1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                         670442572800.0,      33522128640.0,       1323241920.0,
                                         40840800.0,          960960.0,            16380.0,
                                         182.0,               1.0};

// Sum of coeffs[offset + 2k] * A^{2k} over the given even powers.
template <std::size_t N>
ComplexMatrix even_sum(const std::array<double, N>& coeffs, std::size_t offset,
                       std::span<const ComplexMatrix> even_powers) {
  ComplexMatrix acc(even_powers.front().dim());
  for (std::size_t k = 0; offset + 2 * k < N && k < even_powers.size(); ++k)
    acc = add(acc, scale(even_powers[k], coeffs[offset + 2 * k]));
  return acc;
}

// Returns exp(a) ~ (V - U)^{-1} (V + U) for a low-degree approximant.
template <std::size_t N>
ComplexMatrix pade_low(const ComplexMatrix& a, const std::array<double, N>& b) {
  const std::size_t n = a.dim();
  std::vector<ComplexMatrix> powers{ComplexMatrix::identity(n), mul(a, a)};
  while (2 * powers.size() < N) powers.push_back(mul(powers.back(), powers[1]));
  const ComplexMatrix u = mul(a, even_sum(b, 1, powers));
  const ComplexMatrix v = even_sum(b, 0, powers);
  return LuDecomposition(sub(v, u)).solve(add(v, u));
}

ComplexMatrix pade13(const ComplexMatrix& a) {
  const auto& b = kPade13;
  const std::size_t n = a.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix a2 = mul(a, a);
  const ComplexMatrix a4 = mul(a2, a2);
  const ComplexMatrix a6 = mul(a4, a2);
  const ComplexMatrix u_inner = add(add(scale(a6, b[13]), scale(a4, b[11])), scale(a2, b[9]));
  const ComplexMatrix u_outer =
      add(add(add(add(mul(a6, u_inner), scale(a6, b[7])), scale(a4, b[5])), scale(a2, b[3])),
          scale(id, b[1]));
  const ComplexMatrix u = mul(a, u_outer);
  const ComplexMatrix v_inner = add(add(scale(a6, b[12]), scale(a4, b[10])), scale(a2, b[8]));
  const ComplexMatrix v =
      add(add(add(add(mul(a6, v_inner), scale(a6, b[6])), scale(a4, b[4])), scale(a2, b[2])),
          scale(id, b[0]));
  return LuDecomposition(sub(v, u)).solve(add(v, u));
}

}  // namespace

std::string_view to_string(ExpMethod method) {
  switch (method) {
    case ExpMethod::scaling_squaring:
      return "scaling_squaring";
    case ExpMethod::spectral_path:
      return "spectral_path";
  }
  return "unknown";
}

ExpResult expm(const ComplexMatrix& t) {
  if (!t.all_finite()) throw InvalidMatrix("expm input must be finite");
  const double norm = one_norm(t);
  if (!std::isfinite(norm)) throw OverflowError("expm input norm overflows");

  ComplexMatrix value(t.dim());
  if (norm <= kPadeThetas[0]) {
    value = pade_low(t, kPade3);
  } else if (norm <= kPadeThetas[1]) {
    value = pade_low(t, kPade5);
  } else if (norm <= kPadeThetas[2]) {
    value = pade_low(t, kPade7);
  } else if (norm <= kPadeThetas[3]) {
    value = pade_low(t, kPade9);
  } else {
    const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kPadeThetas[4]))));
    value = pade13(scale(t, std::ldexp(1.0, -squarings)));
    for (int i = 0; i < squarings; ++i) {
      value = mul(value, value);
      if (!value.all_finite()) throw OverflowError("expm overflow during squaring phase");
    }
  }
  if (!value.all_finite()) throw OverflowError("expm result is not finite");
  return {std::move(value), ExpMethod::scaling_squaring, kUnitRoundoff};
}

ExpResult expm_normal(const ComplexMatrix& n) {
  const SpectralDecomposition d = eig_normal(n);
  std::vector<Complex> exps;
  exps.reserve(d.eigenvalues.size());
  for (const Complex& z : d.eigenvalues) exps.push_back(std::exp(z));
  SpectralDecomposition mapped{d.basis, std::move(exps)};
  ComplexMatrix value = mapped.reconstruct();
  if (!value.all_finite()) throw OverflowError("spectral exponential is not finite");
  const double est = relative_distance(n, d.reconstruct());
  return {std::move(value), ExpMethod::spectral_path, est};
}

double exp_adjoint_check(const ComplexMatrix& t) {
  const ComplexMatrix e = expm(t).value;
  const ComplexMatrix e_adj = expm(adjoint(t)).value;
  return frobenius_norm(sub(e_adj, adjoint(e))) / std::max(1.0, frobenius_norm(e));
}

}  // namespace opexp
