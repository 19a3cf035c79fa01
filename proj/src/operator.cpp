#include "stokeskit/operator.hpp"

namespace stokeskit {

DiffOperator::DiffOperator(const RationalFunc& c) : coeffs_{c} { trim(); }

DiffOperator::DiffOperator(std::vector<RationalFunc> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

DiffOperator DiffOperator::delta() { return DiffOperator(std::vector<RationalFunc>{RationalFunc(0), RationalFunc(1)}); }

void DiffOperator::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RationalFunc DiffOperator::coeff(int i) const {
  return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : RationalFunc(0);
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // a_i δ^i · b_j δ^j = Σ_k binom(i,k) a_i δ^k(b_j) δ^{i-k+j}
  const int da = a.degree();
  const int db = b.degree();
  std::vector<RationalFunc> out(static_cast<std::size_t>(da + db + 1));
  for (int j = 0; j <= db; ++j) {
    if (b.coeffs_[j].is_zero()) continue;
    std::vector<RationalFunc> derivs{b.coeffs_[j]};
    for (int k = 1; k <= da; ++k) derivs.push_back(derivs.back().delta());
    for (int i = 0; i <= da; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (int k = 0; k <= i; ++k) {
        if (derivs[k].is_zero()) continue;
        const GaussianRational binom{Rational(binomial(i, k))};
        out[i - k + j] += a.coeffs_[i] * derivs[k] * RationalFunc(binom);
      }
    }
  }
  return DiffOperator(std::move(out));
}

DiffOperator op_multiply(const DiffOperator& a, const DiffOperator& b) { return a * b; }

DiffOperator pow(const DiffOperator& a, unsigned n) {
  DiffOperator r(1);
  for (unsigned k = 0; k < n; ++k) r = r * a;
  return r;
}

RationalFunc DiffOperator::apply(const RationalFunc& f) const {
  RationalFunc acc(0);
  RationalFunc d = f;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) d = d.delta();
    acc += coeffs_[i] * d;
  }
  return acc;
}

std::string DiffOperator::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (coeffs_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string c = coeffs_[i].to_string();
    if (i == 0) {
      out += c;
    } else {
      out += c + "*delta" + (i > 1 ? "^" + std::to_string(i) : "");
    }
  }
  return out;
}

}  // namespace stokeskit
