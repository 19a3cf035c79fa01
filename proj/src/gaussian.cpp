#include "stokeskit/gaussian.hpp"

#include "stokeskit/errors.hpp"

namespace stokeskit {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  const Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussianRational::to_string() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_im) {
    return sgn(re_) < 0 ? "(" + stokeskit::to_string(re_) + ")" : stokeskit::to_string(re_);
  }
  std::string im_part = stokeskit::to_string(im_) + "*i";
  if (!has_re) return "(" + im_part + ")";
  const std::string sep = sgn(im_) < 0 ? "" : "+";
  return "(" + stokeskit::to_string(re_) + sep + im_part + ")";
}

std::optional<GaussianRational> exact_sqrt(const GaussianRational& x) {
  if (x.is_zero()) return GaussianRational(0);
  // (a+bi)² = p+qi: a² = (p+|x|)/2, b = q/(2a)
  const auto modulus = rational_sqrt(x.norm());
  if (!modulus) return std::nullopt;
  const Rational a2 = (x.real() + *modulus) / 2;
  if (sgn(a2) == 0) {
    const auto b = rational_sqrt(-x.real());
    if (!b) return std::nullopt;
    return GaussianRational(Rational(0), *b);
  }
  const auto a = rational_sqrt(a2);
  if (!a) return std::nullopt;
  return GaussianRational(*a, Rational(x.imag() / (2 * *a)));
}

}  // namespace stokeskit
