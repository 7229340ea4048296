#include "phaselab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace phaselab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Representative of theta modulo 2pi in (-pi, pi].
double wrap_angle(double theta) {
  double r = theta - kTwoPi * std::ceil((theta - kPi) / kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

// (e^{-ika} - e^{-ikb}) / (2 pi i k) for k > 0.
Complex indicator_positive(double a, double b, std::int64_t k) {
  const double kd = static_cast<double>(k);
  const Complex num = std::polar(1.0, -kd * a) - std::polar(1.0, -kd * b);
  return num / Complex(0.0, kTwoPi * kd);
}

Complex indicator_coefficient(const Arc& arc, std::int64_t k) {
  if (k == 0) return arc.length() / kTwoPi;
  if (arc.is_full_circle()) return 0.0;
  if (k < 0) return std::conj(indicator_coefficient(arc, -k));
  Complex sum{};
  for (const auto& piece : arc.pieces()) sum += indicator_positive(piece.a(), piece.b(), k);
  return sum;
}

Complex arg_coefficient(std::int64_t k) {
  if (k == 0) return 0.0;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return Complex(0.0, sign / static_cast<double>(k));
}

bool overlaps(const Arc& x, const Arc& y) {
  constexpr double slack = 1e-12;
  for (const auto& p : x.pieces())
    for (const auto& q : y.pieces())
      if (std::max(p.a(), q.a()) < std::min(p.b(), q.b()) - slack) return true;
  return false;
}

}  // namespace

CoeffVec::CoeffVec(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
  for (const auto& x : c_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw std::invalid_argument("CoeffVec: non-finite coefficient");
  trim();
}

CoeffVec CoeffVec::basis(std::size_t n, Complex weight) {
  std::vector<Complex> c(n + 1);
  c[n] = weight;
  return CoeffVec(std::move(c));
}

void CoeffVec::trim() {
  while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
}

std::vector<Complex> CoeffVec::dense(std::size_t len) const {
  std::vector<Complex> out(len);
  std::copy_n(c_.begin(), std::min(len, c_.size()), out.begin());
  return out;
}

double CoeffVec::norm() const {
  double sum = 0.0;
  for (const auto& x : c_) sum += std::norm(x);
  return std::sqrt(sum);
}

CoeffVec operator+(const CoeffVec& f, const CoeffVec& g) {
  std::vector<Complex> out(std::max(f.size(), g.size()));
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = f[n] + g[n];
  return CoeffVec(std::move(out));
}

CoeffVec operator-(const CoeffVec& f, const CoeffVec& g) {
  std::vector<Complex> out(std::max(f.size(), g.size()));
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = f[n] - g[n];
  return CoeffVec(std::move(out));
}

CoeffVec operator*(Complex a, const CoeffVec& f) {
  std::vector<Complex> out(f.c_);
  for (auto& x : out) x *= a;
  return CoeffVec(std::move(out));
}

Complex inner(const CoeffVec& f, const CoeffVec& g) {
  Complex sum{};
  const std::size_t len = std::min(f.size(), g.size());
  for (std::size_t n = 0; n < len; ++n) sum += f[n] * std::conj(g[n]);
  return sum;
}

CoeffVec apply_number(const CoeffVec& f) {
  std::vector<Complex> out(f.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = static_cast<double>(n) * f[n];
  return CoeffVec(std::move(out));
}

Arc::Arc(double a, double b) : a_(a), len_(b - a) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("Arc: endpoints must be finite");
  if (!(len_ > 0.0) || len_ > kTwoPi) {
    std::ostringstream os;
    os << "Arc: need 0 < b - a <= 2pi, got (" << a << ", " << b << "]";
    throw std::invalid_argument(os.str());
  }
}

Arc Arc::rotated(double t) const {
  Arc out = *this;
  out.a_ = a_ + t;
  if (!std::isfinite(out.a_)) throw std::invalid_argument("Arc::rotated: non-finite angle");
  return out;
}

std::vector<Arc> Arc::pieces() const {
  if (is_full_circle()) return {Arc(-kPi, kPi)};
  const double start = wrap_angle(a_);
  const double end = start + len_;
  if (end <= kPi) return {Arc(start, end)};
  std::vector<Arc> out;
  if (start < kPi) out.emplace_back(start, kPi);
  out.emplace_back(-kPi, std::min(end - kTwoPi, kPi));
  return out;
}

bool Arc::contains(double theta) const {
  double d = std::fmod(theta - a_, kTwoPi);
  if (d <= 0.0) d += kTwoPi;
  return d <= len_;
}

symbol::Step make_step(std::vector<symbol::StepPiece> pieces) {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      if (overlaps(pieces[i].arc, pieces[j].arc))
        throw std::invalid_argument("make_step: step arcs overlap");
  for (const auto& p : pieces)
    if (!std::isfinite(p.value)) throw std::invalid_argument("make_step: non-finite value");
  return symbol::Step{std::move(pieces)};
}

symbol::Step arg_step(std::size_t k) {
  if (k == 0) throw std::invalid_argument("arg_step: k must be >= 1");
  std::vector<symbol::StepPiece> pieces;
  pieces.reserve(k);
  const double kd = static_cast<double>(k);
  for (std::size_t j = 1; j <= k; ++j) {
    const double lo = -kPi + kTwoPi * static_cast<double>(j - 1) / kd;
    const double hi = -kPi + kTwoPi * static_cast<double>(j) / kd;
    pieces.push_back({Arc(lo, hi), hi});
  }
  // Cells of an equipartition are disjoint by construction.
  return symbol::Step{std::move(pieces)};
}

bool is_real_valued(const Symbol& s) {
  return std::visit(overloaded{
                        [](const symbol::TrigMonomial& m) { return m.k == 0; },
                        [](const auto&) { return true; },
                    },
                    s);
}

Complex evaluate(const Symbol& s, double theta) {
  return std::visit(overloaded{
                        [&](const symbol::Arg&) { return Complex(wrap_angle(theta)); },
                        [&](const symbol::Indicator& ind) {
                          return Complex(ind.arc.contains(theta) ? 1.0 : 0.0);
                        },
                        [&](const symbol::TrigMonomial& m) {
                          return std::polar(1.0, static_cast<double>(m.k) * theta);
                        },
                        [&](const symbol::Step& st) {
                          double v = 0.0;
                          for (const auto& p : st.pieces)
                            if (p.arc.contains(theta)) v += p.value;
                          return Complex(v);
                        },
                    },
                    s);
}

Complex fourier_coefficient(const Symbol& s, std::int64_t k) {
  return std::visit(overloaded{
                        [&](const symbol::Arg&) { return arg_coefficient(k); },
                        [&](const symbol::Indicator& ind) { return indicator_coefficient(ind.arc, k); },
                        [&](const symbol::TrigMonomial& m) { return Complex(m.k == k ? 1.0 : 0.0); },
                        [&](const symbol::Step& st) {
                          Complex sum{};
                          for (const auto& p : st.pieces)
                            sum += p.value * indicator_coefficient(p.arc, k);
                          return sum;
                        },
                    },
                    s);
}

TruncatedOperator toeplitz(const Symbol& s, std::size_t dim) {
  TruncatedOperator out(dim);
  const auto d = static_cast<std::int64_t>(dim);
  // diagonal[k + d - 1] = phi_hat(k), k = n - m in (-d, d)
  std::vector<Complex> diagonal(2 * dim - 1);
  for (std::int64_t k = -(d - 1); k <= d - 1; ++k) diagonal[k + d - 1] = fourier_coefficient(s, k);
  for (std::int64_t n = 0; n < d; ++n)
    for (std::int64_t m = 0; m < d; ++m) out(n, m) = diagonal[n - m + d - 1];
  out.refresh();
  return out;
}

TruncatedOperator number_operator(std::size_t dim) {
  TruncatedOperator out(dim);
  for (std::size_t n = 0; n < dim; ++n) out(n, n) = static_cast<double>(n);
  out.refresh();
  return out;
}

TruncatedOperator number_rotation(double t, std::size_t dim) {
  TruncatedOperator out(dim);
  for (std::size_t n = 0; n < dim; ++n) out(n, n) = std::polar(1.0, static_cast<double>(n) * t);
  out.refresh();
  return out;
}

TruncatedOperator left_shift(std::size_t dim) {
  TruncatedOperator out(dim);
  for (std::size_t n = 1; n < dim; ++n) out(n - 1, n) = 1.0;
  out.refresh();
  return out;
}

CoeffVec phi_apply_exact(const CoeffVec& f, std::size_t out_len) {
  if (out_len == 0) throw std::invalid_argument("phi_apply_exact: out_len must be >= 1");
  std::vector<Complex> out(out_len);
  const auto c = f.coeffs();
  for (std::size_t n = 0; n < out_len; ++n) {
    Complex acc{};
    for (std::size_t m = 0; m < c.size(); ++m) {
      if (m == n || c[m] == Complex{}) continue;
      acc += arg_coefficient(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(m)) * c[m];
    }
    out[n] = acc;
  }
  return CoeffVec(std::move(out));
}

namespace {

// Neumaier summation; long alternating sums otherwise leave O(n eps) behind.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

Complex eval_at_minus_one(const CoeffVec& f) {
  CompensatedSum re, im;
  const auto c = f.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    const Complex term = (j % 2 == 0) ? c[j] : -c[j];
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.value(), im.value()};
}

}  // namespace phaselab
