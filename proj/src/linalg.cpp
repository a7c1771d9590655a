#include "propkoszul/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace propkoszul {

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  std::size_t slash = t.find('/');
  auto digits_only = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  bool ok = slash == std::string::npos ? digits_only(start, t.size())
                                       : digits_only(start, slash) && digits_only(slash + 1, t.size());
  if (!ok) throw std::invalid_argument("malformed rational literal '" + text + "'");
  Rational q;
  if (t[0] == '+') t.erase(0, 1);
  q.set_str(t, 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

SparseVec axpy(const SparseVec& x, const Rational& a, const SparseVec& y) {
  SparseVec out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, a * y[j].second);
      ++j;
    } else {
      Rational v = x[i].second + a * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scaled(const SparseVec& x, const Rational& a) {
  if (a == 0) return {};
  SparseVec out = x;
  for (auto& e : out) e.second *= a;
  return out;
}

SparseVec make_sparse(std::vector<std::pair<std::size_t, Rational>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& e : entries) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
      if (out.back().second == 0) out.pop_back();
    } else if (e.second != 0) {
      out.push_back(std::move(e));
    }
  }
  return out;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i].emplace_back(i, Rational(1));
  return m;
}

RationalMatrix RationalMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < ncols; ++c)
      if (rows[r][c] != 0) m.cols_[c].emplace_back(r, rows[r][c]);
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows, std::vector<SparseVec> cols) {
  RationalMatrix m;
  m.rows_ = rows;
  for (const auto& c : cols)
    for (const auto& e : c)
      if (e.first >= rows) throw std::out_of_range("column entry outside matrix");
  m.cols_ = std::move(cols);
  return m;
}

Rational RationalMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = cols_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, std::size_t key) { return e.first < key; });
  if (it != col.end() && it->first == r) return it->second;
  return 0;
}

void RationalMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_.size()) throw std::out_of_range("matrix index");
  auto& col = cols_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, std::size_t key) { return e.first < key; });
  if (it != col.end() && it->first == r) {
    if (v == 0)
      col.erase(it);
    else
      it->second = v;
  } else if (v != 0) {
    col.insert(it, {r, v});
  }
}

std::size_t RationalMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

bool RationalMatrix::is_zero() const { return nonzeros() == 0; }

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols(), rows_);
  for (std::size_t c = 0; c < cols_.size(); ++c)
    for (const auto& [r, v] : cols_[c]) t.cols_[r].emplace_back(c, v);
  return t;
}

SparseVec RationalMatrix::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [c, a] : v) out = axpy(out, a, cols_.at(c));
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) out.cols_[c] = a.apply(b.cols_[c]);
  return out;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

SparseVec Echelon::reduce(SparseVec v) const {
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t p = pivot_row_[v[i].first];
    if (p == npos) {
      ++i;
      continue;
    }
    Rational coef = -v[i].second;
    v = axpy(v, coef, rows_[p]);
  }
  return v;
}

bool Echelon::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Rational inv = 1 / v.front().second;
  for (auto& e : v) e.second *= inv;
  pivot_row_[v.front().first] = rows_.size();
  rows_.push_back(std::move(v));
  return true;
}

std::optional<SparseVec> TrackingEchelon::insert(SparseVec v) {
  SparseVec combo{{inserted_++, Rational(1)}};
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t p = pivot_row_[v[i].first];
    if (p == npos) {
      ++i;
      continue;
    }
    Rational coef = -v[i].second;
    v = axpy(v, coef, rows_[p].vec);
    combo = axpy(combo, coef, rows_[p].combo);
  }
  if (v.empty()) return combo;
  Rational inv = 1 / v.front().second;
  for (auto& e : v) e.second *= inv;
  for (auto& e : combo) e.second *= inv;
  pivot_row_[v.front().first] = rows_.size();
  rows_.push_back({std::move(v), std::move(combo)});
  return std::nullopt;
}

std::optional<SparseVec> TrackingEchelon::coordinates(SparseVec v) const {
  SparseVec coords;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t p = pivot_row_[v[i].first];
    if (p == npos) return std::nullopt;
    Rational coef = v[i].second;
    v = axpy(v, -coef, rows_[p].vec);
    coords = axpy(coords, coef, rows_[p].combo);
  }
  return coords;
}

std::size_t rank(const RationalMatrix& m) {
  Echelon e(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) e.insert(m.column(c));
  return e.rank();
}

RationalMatrix kernel_basis(const RationalMatrix& m) {
  TrackingEchelon e(m.rows());
  std::vector<SparseVec> kernel;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (auto rel = e.insert(m.column(c))) kernel.push_back(std::move(*rel));
  return RationalMatrix::from_columns(m.cols(), std::move(kernel));
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  TrackingEchelon e(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (e.insert(m.column(c))) return std::nullopt;
  std::vector<SparseVec> cols;
  for (std::size_t i = 0; i < m.rows(); ++i) cols.push_back(*e.coordinates(SparseVec{{i, Rational(1)}}));
  return RationalMatrix::from_columns(m.cols(), std::move(cols));
}

RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b) {
  std::vector<SparseVec> cols;
  cols.reserve(a.cols() * b.cols());
  for (std::size_t ca = 0; ca < a.cols(); ++ca)
    for (std::size_t cb = 0; cb < b.cols(); ++cb) {
      SparseVec col;
      for (const auto& [ra, x] : a.column(ca))
        for (const auto& [rb, y] : b.column(cb)) col.emplace_back(ra * b.rows() + rb, x * y);
      cols.push_back(std::move(col));
    }
  return RationalMatrix::from_columns(a.rows() * b.rows(), std::move(cols));
}

bool ChainComplex::shapes_consistent() const {
  if (boundaries.size() != dims.size()) return false;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (boundaries[i].cols() != dims[i]) return false;
    std::size_t expected_rows = i == 0 ? 0 : dims[i - 1];
    if (boundaries[i].rows() != expected_rows) return false;
  }
  return true;
}

std::optional<std::size_t> ChainComplex::first_d2_failure() const {
  if (!shapes_consistent()) return 0;
  for (std::size_t i = 2; i < dims.size(); ++i)
    if (!(boundaries[i - 1] * boundaries[i]).is_zero()) return i;
  return std::nullopt;
}

std::vector<std::size_t> homology_dims(const ChainComplex& c) {
  if (!c.shapes_consistent()) throw std::domain_error("chain complex has inconsistent shapes");
  if (auto bad = c.first_d2_failure())
    throw std::domain_error("d^2 != 0 at degree " + std::to_string(*bad));
  std::vector<std::size_t> ranks(c.dims.size() + 1, 0);
  for (std::size_t i = 0; i < c.dims.size(); ++i) ranks[i] = rank(c.boundaries[i]);
  std::vector<std::size_t> h(c.dims.size());
  for (std::size_t i = 0; i < c.dims.size(); ++i) h[i] = c.dims[i] - ranks[i] - ranks[i + 1];
  return h;
}

long euler_characteristic(const std::vector<std::size_t>& dims) {
  long chi = 0;
  for (std::size_t i = 0; i < dims.size(); ++i)
    chi += (i % 2 == 0 ? 1 : -1) * static_cast<long>(dims[i]);
  return chi;
}

}  // namespace propkoszul
