#include "star.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <numeric>

namespace bzphylo::cyclic::detail {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
}

MarginalCodec::MarginalCodec(int m, int d) : m_(m), d_(d) {
  if (m < 2) throw ValidationError("modulus must be at least 2");
  if (d < 0) throw ValidationError("degree must be nonnegative");
  const std::size_t dims = static_cast<std::size_t>(m - 1);
  std::size_t cells = 1;
  for (std::size_t i = 0; i < dims; ++i) {
    cells = checked_mul(cells, static_cast<std::uint64_t>(d + 1));
    if (cells > 50'000'000) throw ResourceExceeded("marginal table too large");
  }
  dense_.assign(cells, npos);
  std::vector<int> v(dims, 0);
  // Lexicographic enumeration of vectors with sum <= d.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == dims) {
      dense_[radix_key(v)] = vecs_.size();
      vecs_.push_back(v);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      v[i] = c;
      self(self, i + 1, left - c);
    }
    v[i] = 0;
  };
  rec(rec, 0, d);

  reversed_.resize(vecs_.size());
  for (std::size_t i = 0; i < vecs_.size(); ++i) {
    std::vector<int> r(vecs_[i].rbegin(), vecs_[i].rend());
    reversed_[i] = dense_[radix_key(r)];
  }
  unit_.assign(static_cast<std::size_t>(m), 0);
  std::vector<int> z(dims, 0);
  unit_[0] = dense_[radix_key(z)];
  for (int a = 1; a < m; ++a) {
    if (d == 0) {
      unit_[static_cast<std::size_t>(a)] = npos;
      continue;
    }
    std::vector<int> u(dims, 0);
    u[static_cast<std::size_t>(a - 1)] = 1;
    unit_[static_cast<std::size_t>(a)] = dense_[radix_key(u)];
  }
}

std::size_t MarginalCodec::radix_key(std::span<const int> v) const {
  std::size_t key = 0;
  for (int c : v) key = key * static_cast<std::size_t>(d_ + 1) + static_cast<std::size_t>(c);
  return key;
}

std::size_t MarginalCodec::id(std::span<const int> v) const {
  if (v.size() != static_cast<std::size_t>(m_ - 1)) {
    throw ValidationError("marginal has wrong length");
  }
  int total = 0;
  for (int c : v) {
    if (c < 0) throw ValidationError("negative coordinate");
    total += c;
  }
  if (total > d_) throw ValidationError("coordinate sum exceeds degree");
  return dense_[radix_key(v)];
}

std::optional<std::size_t> MarginalCodec::add(std::size_t a, std::size_t b) const {
  const auto& x = vecs_[a];
  const auto& y = vecs_[b];
  std::vector<int> s(x.size());
  int total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = x[i] + y[i];
    total += s[i];
  }
  if (total > d_) return std::nullopt;
  return dense_[radix_key(s)];
}

StarSemigroup::StarSemigroup(const MarginalCodec& codec, std::size_t k, int d,
                             Budget& budget)
    : codec_(codec), k_(k) {
  const int m = codec.modulus();
  // Key space must fit in 64 bits.
  long double space = 1;
  for (std::size_t i = 0; i < k; ++i) space *= static_cast<long double>(codec.size());
  if (space > 9e18L) throw ResourceExceeded("star state space too large");

  std::vector<int> labels(k, 0);
  auto rec = [&](auto&& self, std::size_t i, int sum) -> void {
    if (k == 0) {
      generators_.push_back({});
      return;
    }
    if (i + 1 == k) {
      labels[i] = mod(-sum, m);
      generators_.push_back(labels);
      return;
    }
    for (int a = 0; a < m; ++a) {
      labels[i] = a;
      self(self, i + 1, sum + a);
    }
  };
  rec(rec, 0, 0);
  std::sort(generators_.begin(), generators_.end());
  budget.charge(generators_.size());

  if (d >= 1) {
    for (const auto& gen : generators_) {
      std::vector<std::size_t> ids(k);
      for (std::size_t i = 0; i < k; ++i) ids[i] = codec.unit(gen[i]);
      generator_ids_.push_back(std::move(ids));
    }
  }

  levels_.resize(static_cast<std::size_t>(d) + 1);
  level_sets_.resize(static_cast<std::size_t>(d) + 1);
  std::vector<std::size_t> zero(k, codec.zero());
  level_sets_[0].insert(key(zero));
  levels_[0].push_back(key(zero));
  for (int t = 1; t <= d; ++t) {
    auto& set = level_sets_[static_cast<std::size_t>(t)];
    for (auto prev : levels_[static_cast<std::size_t>(t) - 1]) {
      const auto ids = decode(prev);
      for (const auto& gen : generator_ids_) {
        budget.charge();
        std::vector<std::size_t> next(k);
        for (std::size_t i = 0; i < k; ++i) next[i] = *codec.add(ids[i], gen[i]);
        set.insert(key(next));
      }
    }
    auto& lvl = levels_[static_cast<std::size_t>(t)];
    lvl.assign(set.begin(), set.end());
    std::sort(lvl.begin(), lvl.end());
  }
}

std::uint64_t StarSemigroup::key(std::span<const std::size_t> ids) const {
  std::uint64_t key = 0;
  for (auto id : ids) key = key * codec_.size() + id;
  return key;
}

std::vector<std::size_t> StarSemigroup::decode(std::uint64_t key) const {
  std::vector<std::size_t> ids(k_);
  for (std::size_t i = k_; i-- > 0;) {
    ids[i] = static_cast<std::size_t>(key % codec_.size());
    key /= codec_.size();
  }
  return ids;
}

bool StarSemigroup::contains(std::span<const std::size_t> ids, int degree) const {
  if (degree < 0 || static_cast<std::size_t>(degree) >= level_sets_.size()) {
    throw ValidationError("degree outside materialised range");
  }
  return level_sets_[static_cast<std::size_t>(degree)].contains(key(ids));
}

std::optional<std::vector<std::size_t>> StarSemigroup::decompose(
    std::span<const std::size_t> ids, int degree) const {
  if (!contains(ids, degree)) return std::nullopt;
  // Levels are exact, so picking the first generator that leaves a member of
  // the level below never needs to backtrack.
  std::vector<std::size_t> residual(ids.begin(), ids.end());
  std::vector<std::size_t> out;
  for (int t = degree; t >= 1; --t) {
    bool found = false;
    for (std::size_t gi = 0; gi < generator_ids_.size() && !found; ++gi) {
      const auto& gen = generator_ids_[gi];
      std::vector<std::size_t> rest(k_);
      bool ok = true;
      for (std::size_t i = 0; i < k_ && ok; ++i) {
        const auto& r = codec_.vec(residual[i]);
        const auto& u = codec_.vec(gen[i]);
        std::vector<int> diff(r.size());
        for (std::size_t j = 0; j < r.size() && ok; ++j) {
          diff[j] = r[j] - u[j];
          ok = diff[j] >= 0;
        }
        if (ok) rest[i] = codec_.id(diff);
      }
      if (ok && contains(rest, t - 1)) {
        out.push_back(gi);
        residual = std::move(rest);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

long long narrow(__int128 v) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min()) {
    throw ResourceExceeded("lattice entry overflow");
  }
  return static_cast<long long>(v);
}

std::size_t leading(const std::vector<long long>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return i;
  }
  return v.size();
}

}  // namespace

void IntegerLattice::add(std::vector<long long> v) {
  if (v.size() != rows_.size()) throw ValidationError("lattice dimension mismatch");
  for (;;) {
    const std::size_t c = leading(v);
    if (c == v.size()) return;
    if (v[c] < 0) {
      for (auto& x : v) x = -x;
    }
    auto& row = rows_[c];
    if (row.empty()) {
      row = std::move(v);
      return;
    }
    // Extended gcd on the leading entries.
    long long a = row[c], b = v[c];
    long long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
      const long long q = a / b;
      long long tmp = a - q * b;
      a = b;
      b = tmp;
      tmp = s0 - q * s1;
      s0 = s1;
      s1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    const long long g = a;
    const long long ra = row[c] / g;
    const long long vb = v[c] / g;
    std::vector<long long> combined(v.size()), reduced(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      combined[i] = narrow(static_cast<__int128>(s0) * row[i] +
                           static_cast<__int128>(t0) * v[i]);
      reduced[i] = narrow(static_cast<__int128>(ra) * v[i] -
                          static_cast<__int128>(vb) * row[i]);
    }
    if (combined[c] < 0) {
      for (auto& x : combined) x = -x;
    }
    row = std::move(combined);
    v = std::move(reduced);
  }
}

bool IntegerLattice::contains(std::vector<long long> v) const {
  if (v.size() != rows_.size()) throw ValidationError("lattice dimension mismatch");
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] == 0) continue;
    const auto& row = rows_[c];
    if (row.empty() || v[c] % row[c] != 0) return false;
    const long long q = v[c] / row[c];
    for (std::size_t i = c; i < v.size(); ++i) {
      v[i] = narrow(static_cast<__int128>(v[i]) - static_cast<__int128>(q) * row[i]);
    }
  }
  return true;
}

std::size_t IntegerLattice::rank() const {
  return static_cast<std::size_t>(std::count_if(
      rows_.begin(), rows_.end(), [](const auto& r) { return !r.empty(); }));
}

bool in_cone(const std::vector<std::vector<long long>>& generators,
             const std::vector<long long>& target) {
  using Q = boost::multiprecision::cpp_rational;
  const std::size_t rows = target.size();
  const std::size_t n = generators.size();
  // Phase-one simplex: A lambda + I art = b, b >= 0, minimise sum(art).
  const std::size_t cols = n + rows;
  std::vector<std::vector<Q>> tab(rows, std::vector<Q>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    const bool flip = target[r] < 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (generators[j].size() != rows) throw ValidationError("cone dimension mismatch");
      tab[r][j] = flip ? -generators[j][r] : generators[j][r];
    }
    tab[r][n + r] = 1;
    tab[r][cols] = flip ? -target[r] : target[r];
  }
  std::vector<std::size_t> basis(rows);
  std::iota(basis.begin(), basis.end(), n);
  // Reduced costs of the phase-one objective.
  auto reduced_cost = [&](std::size_t j) {
    Q c = j >= n ? Q(1) : Q(0);
    for (std::size_t r = 0; r < rows; ++r) {
      if (basis[r] >= n) c -= tab[r][j];
    }
    return c;
  };
  for (;;) {
    // Bland's rule: smallest improving column, smallest-index ratio tie break.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (reduced_cost(j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = rows;
    Q best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (tab[r][enter] > 0) {
        Q ratio = tab[r][cols] / tab[r][enter];
        if (leave == rows || ratio < best ||
            (ratio == best && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
    }
    if (leave == rows) break;  // unbounded direction; objective is bounded below by 0
    const Q pivot = tab[leave][enter];
    for (auto& x : tab[leave]) x /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || tab[r][enter] == 0) continue;
      const Q f = tab[r][enter];
      for (std::size_t j = 0; j <= cols; ++j) tab[r][j] -= f * tab[leave][j];
    }
    basis[leave] = enter;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] >= n && tab[r][cols] != 0) return false;
  }
  return true;
}

}  // namespace bzphylo::cyclic::detail
