#include "ulpa/linalg.hpp"

#include <stdexcept>

#include "ulpa/errors.hpp"

namespace ulpa {

namespace {

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void check_same_field(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (!(a == b))
    throw std::logic_error("scalar arithmetic across different fields");
}

}  // namespace

FieldDescriptor FieldDescriptor::prime_field(std::uint64_t p) {
  if (p >= (1ull << 31)) throw InvalidInput("prime modulus too large");
  if (!is_prime(p))
    throw InvalidInput("not a prime modulus: " + std::to_string(p));
  return {Kind::prime, p};
}

std::string FieldDescriptor::to_string() const {
  return kind == Kind::rationals ? "Q" : "F" + std::to_string(p);
}

std::string RingDescriptor::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " x ";
    s += factors[i].to_string();
  }
  return s;
}

bool RingDescriptor::positive_definite() const {
  for (const auto& f : factors)
    if (!field_positive_definite(f)) return false;
  return true;
}

Scalar Scalar::zero(const FieldDescriptor& f) {
  Scalar s;
  s.f_ = f;
  return s;
}

Scalar Scalar::one(const FieldDescriptor& f) { return of_int(f, 1); }

Scalar Scalar::of_int(const FieldDescriptor& f, long v) {
  Scalar s;
  s.f_ = f;
  if (f.kind == FieldDescriptor::Kind::rationals) {
    s.q_ = v;
  } else {
    long m = static_cast<long>(v % static_cast<long>(f.p));
    if (m < 0) m += static_cast<long>(f.p);
    s.r_ = static_cast<std::uint64_t>(m);
  }
  return s;
}

Scalar Scalar::of_rational(long num, long den) {
  if (den == 0) throw std::logic_error("zero denominator");
  Scalar s;
  s.q_ = mpq_class(num, den);
  s.q_.canonicalize();
  return s;
}

bool Scalar::is_zero() const {
  return f_.kind == FieldDescriptor::Kind::rationals ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
  return f_.kind == FieldDescriptor::Kind::rationals ? q_ == 1 : r_ == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(f_, o.f_);
  Scalar s = *this;
  if (f_.kind == FieldDescriptor::Kind::rationals)
    s.q_ += o.q_;
  else
    s.r_ = (r_ + o.r_) % f_.p;
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(f_, o.f_);
  Scalar s = *this;
  if (f_.kind == FieldDescriptor::Kind::rationals)
    s.q_ *= o.q_;
  else
    s.r_ = r_ * o.r_ % f_.p;
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (f_.kind == FieldDescriptor::Kind::rationals)
    s.q_ = -q_;
  else
    s.r_ = r_ == 0 ? 0 : f_.p - r_;
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::logic_error("division by zero");
  Scalar s = *this;
  if (f_.kind == FieldDescriptor::Kind::rationals)
    s.q_ = 1 / q_;
  else
    s.r_ = mod_pow(r_, f_.p - 2, f_.p);
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(f_ == o.f_)) return false;
  return f_.kind == FieldDescriptor::Kind::rationals ? q_ == o.q_
                                                     : r_ == o.r_;
}

std::string Scalar::to_string() const {
  if (f_.kind == FieldDescriptor::Kind::rationals) return q_.get_str();
  return std::to_string(r_) + " mod " + std::to_string(f_.p);
}

bool field_positive_definite(const FieldDescriptor& f) {
  return f.kind == FieldDescriptor::Kind::rationals;
}

std::vector<Scalar> field_pd_witness(const FieldDescriptor& f) {
  if (f.kind == FieldDescriptor::Kind::rationals) return {};
  // 1 + k^2 = 0 has a solution mod p exactly when p = 2 or p = 1 (mod 4);
  // otherwise p copies of 1 sum to zero.
  for (std::uint64_t k = 1; k < f.p; ++k)
    if ((1 + k * k) % f.p == 0)
      return {Scalar::one(f), Scalar::of_int(f, static_cast<long>(k))};
  return std::vector<Scalar>(f.p, Scalar::one(f));
}

Mat Mat::zero(const FieldDescriptor& f, std::size_t r, std::size_t c) {
  Mat m;
  m.rows = r;
  m.cols = c;
  m.a.assign(r * c, Scalar::zero(f));
  return m;
}

Mat Mat::identity(const FieldDescriptor& f, std::size_t n) {
  Mat m = zero(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows != o.rows || cols != o.cols)
    throw std::logic_error("matrix shape mismatch");
  Mat m = *this;
  for (std::size_t k = 0; k < a.size(); ++k) m.a[k] = a[k] + o.a[k];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows != o.rows || cols != o.cols)
    throw std::logic_error("matrix shape mismatch");
  Mat m = *this;
  for (std::size_t k = 0; k < a.size(); ++k) m.a[k] = a[k] - o.a[k];
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols != o.rows) throw std::logic_error("matrix shape mismatch");
  const FieldDescriptor f = a.empty() ? o.a.empty() ? FieldDescriptor{}
                                                    : o.a.front().field()
                                      : a.front().field();
  Mat m = zero(f, rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < o.cols; ++j)
        m.at(i, j) = m.at(i, j) + at(i, k) * o.at(k, j);
    }
  return m;
}

Mat Mat::transpose() const {
  const FieldDescriptor f = a.empty() ? FieldDescriptor{} : a.front().field();
  Mat m = zero(f, cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
  return m;
}

Mat Mat::scaled(const Scalar& s) const {
  Mat m = *this;
  for (auto& x : m.a) x = x * s;
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t pr = row;
    while (pr < m.rows && m.at(pr, col).is_zero()) ++pr;
    if (pr == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j)
      std::swap(m.at(row, j), m.at(pr, j));
    Scalar inv = m.at(row, col).inverse();
    for (std::size_t j = col; j < m.cols; ++j)
      m.at(row, j) = m.at(row, j) * inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Scalar factor = m.at(i, col);
      for (std::size_t j = col; j < m.cols; ++j)
        m.at(i, j) = m.at(i, j) - factor * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(Mat m) { return rref(m).size(); }

std::vector<Vec> nullspace(const Mat& m) {
  Mat r = m;
  auto pivots = rref(r);
  const FieldDescriptor f =
      m.a.empty() ? FieldDescriptor{} : m.a.front().field();
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec v(m.cols, Scalar::zero(f));
    v[free_col] = Scalar::one(f);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -r.at(i, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  if (b.size() != m.rows) throw std::logic_error("rhs size mismatch");
  const FieldDescriptor f =
      m.a.empty() ? (b.empty() ? FieldDescriptor{} : b.front().field())
                  : m.a.front().field();
  Mat aug = Mat::zero(f, m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
  Vec x(m.cols, Scalar::zero(f));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = aug.at(i, m.cols);
  return x;
}

std::optional<Mat> right_inverse(const Mat& m) {
  const FieldDescriptor f =
      m.a.empty() ? FieldDescriptor{} : m.a.front().field();
  Mat x = Mat::zero(f, m.cols, m.rows);
  for (std::size_t j = 0; j < m.rows; ++j) {
    Vec e(m.rows, Scalar::zero(f));
    e[j] = Scalar::one(f);
    auto col = solve(m, e);
    if (!col) return std::nullopt;
    for (std::size_t i = 0; i < m.cols; ++i) x.at(i, j) = (*col)[i];
  }
  return x;
}

std::optional<Mat> left_inverse(const Mat& m) {
  auto r = right_inverse(m.transpose());
  if (!r) return std::nullopt;
  return r->transpose();
}

Subspace Subspace::from_vectors(const FieldDescriptor& f, std::size_t ambient,
                                const std::vector<Vec>& vectors) {
  Mat m = Mat::zero(f, vectors.size(), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient)
      throw std::logic_error("vector size mismatch");
    for (std::size_t j = 0; j < ambient; ++j) m.at(i, j) = vectors[i][j];
  }
  auto pivots = rref(m);
  Subspace s;
  s.field = f;
  s.ambient = ambient;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    s.rows.emplace_back(m.a.begin() + i * ambient,
                        m.a.begin() + (i + 1) * ambient);
  return s;
}

Subspace Subspace::from_rref_rows(const FieldDescriptor& f,
                                  std::size_t ambient,
                                  std::vector<Vec> rows) {
  Subspace s;
  s.field = f;
  s.ambient = ambient;
  s.rows = std::move(rows);
  std::size_t last_pivot = 0;
  bool first = true;
  for (const Vec& r : s.rows) {
    std::size_t p = 0;
    while (p < r.size() && r[p].is_zero()) ++p;
    if (p == r.size() || (!first && p <= last_pivot))
      throw std::logic_error("rows are not in reduced echelon order");
    last_pivot = p;
    first = false;
  }
  return s;
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient) throw std::logic_error("vector size mismatch");
  Vec r = v;
  for (const Vec& row : rows) {
    std::size_t p = 0;
    while (p < ambient && row[p].is_zero()) ++p;
    if (p == ambient || r[p].is_zero()) continue;
    Scalar factor = r[p];
    for (std::size_t j = p; j < ambient; ++j) r[j] = r[j] - factor * row[j];
  }
  for (const auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

bool Subspace::contains_all(const Subspace& other) const {
  for (const Vec& r : other.rows)
    if (!contains(r)) return false;
  return true;
}

}  // namespace ulpa
