#include "ddbin/fill_factor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ddbin/errors.hpp"

namespace ddbin {

namespace {

double max_column_sum(const Matrix& m) {
  double best = 0.0;
  for (std::size_t n = 0; n < m.cols(); ++n) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) sum += m(r, n);
    best = std::max(best, sum);
  }
  return best;
}

void require_finite(const Matrix& w) {
  for (double v : w.values()) {
    if (!std::isfinite(v)) fail(Errc::InvalidArgument, "weight matrix has a non-finite entry");
  }
}

}  // namespace

FillFactorMatrix normalize_nb(const WeightMatrix& weights) {
  const Matrix& w = weights.w;
  if (w.size() == 0) fail(Errc::DegenerateWeights, "empty weight matrix");
  require_finite(w);
  const double lowest = *std::min_element(w.values().begin(), w.values().end());

  Matrix shifted(w.rows(), w.cols());
  for (std::size_t i = 0; i < w.size(); ++i) shifted.values()[i] = w.values()[i] - lowest;
  const double denom = max_column_sum(shifted);
  if (!(denom > 0.0)) fail(Errc::DegenerateWeights, "all weights are equal");
  for (double& v : shifted.values()) v /= denom;
  return FillFactorMatrix{std::move(shifted)};
}

FillFactorMatrix normalize_ann(const WeightMatrix& weights) {
  const Matrix& w = weights.w;
  if (w.size() == 0) fail(Errc::DegenerateWeights, "empty weight matrix");
  require_finite(w);
  for (double v : w.values()) {
    if (v < 0.0) fail(Errc::InvalidArgument, "ANN weights must be non-negative");
  }
  const double denom = max_column_sum(w);
  if (!(denom > 0.0)) fail(Errc::DegenerateWeights, "all weights are zero");
  Matrix f = w;
  for (double& v : f.values()) v /= denom;
  return FillFactorMatrix{std::move(f)};
}

std::string Violation::describe() const {
  char buf[128];
  switch (kind) {
    case Kind::NonFinite:
      std::snprintf(buf, sizeof buf, "NonFinite(%zu,%zu,%.17g)", m, n, value);
      break;
    case Kind::EntryBelowZero:
      std::snprintf(buf, sizeof buf, "EntryBelowZero(%zu,%zu,%.17g)", m, n, value);
      break;
    case Kind::EntryAboveOne:
      std::snprintf(buf, sizeof buf, "EntryAboveOne(%zu,%zu,%.17g)", m, n, value);
      break;
    case Kind::ColumnSumExceeded:
      std::snprintf(buf, sizeof buf, "ColumnSumExceeded(%zu,%.17g)", n, value);
      break;
  }
  return buf;
}

std::vector<Violation> validate(const FillFactorMatrix& fill) {
  std::vector<Violation> out;
  const Matrix& f = fill.f;
  for (std::size_t n = 0; n < f.cols(); ++n) {
    double sum = 0.0;
    bool entries_ok = true;
    for (std::size_t m = 0; m < f.rows(); ++m) {
      const double v = f(m, n);
      if (!std::isfinite(v)) {
        out.push_back({Violation::Kind::NonFinite, m, n, v});
        entries_ok = false;
        continue;
      }
      if (v < -kFillTolerance) {
        out.push_back({Violation::Kind::EntryBelowZero, m, n, v});
        entries_ok = false;
      }
      if (v > 1.0 + kFillTolerance) {
        out.push_back({Violation::Kind::EntryAboveOne, m, n, v});
        entries_ok = false;
      }
      sum += v;
    }
    // A bad entry already explains a bad column; report the sum only for
    // columns whose entries are individually fine.
    if (entries_ok && sum > 1.0 + kFillTolerance) {
      out.push_back({Violation::Kind::ColumnSumExceeded, 0, n, sum});
    }
  }
  return out;
}

double coverage(const FillFactorMatrix& fill) {
  if (fill.pixels() == 0) return 0.0;
  double total = 0.0;
  for (double v : fill.f.values()) total += v;
  return total / static_cast<double>(fill.pixels());
}

}  // namespace ddbin
