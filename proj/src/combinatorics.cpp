#include "ideal_lab/combinatorics.hpp"

#include <algorithm>
#include <sstream>

#include "ideal_lab/errors.hpp"

namespace ideal_lab {

namespace {

constexpr Nat kBitmapLimit = Nat{1} << 28;

bool add_overflows(Nat a, Nat b) { return a > std::numeric_limits<Nat>::max() - b; }

Nat checked_pow(Nat base, unsigned exp) {
  Nat r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<Nat>::max() / base) throw BoundError("power overflows 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace

const char* to_string(IndexDomain d) { return d == IndexDomain::Nat ? "nat" : "pair"; }

std::string format_index(IndexDomain d, Index s) {
  if (d == IndexDomain::Nat) return std::to_string(s);
  return "{" + std::to_string(pair_lo(s)) + "," + std::to_string(pair_hi(s)) + "}";
}

// ---------------------------------------------------------------------------
// GenSet

GenSet::GenSet(std::initializer_list<Nat> xs) : GenSet(std::vector<Nat>(xs)) {}

GenSet::GenSet(std::vector<Nat> xs) : elems_(std::move(xs)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool GenSet::contains(Nat x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

bool GenSet::is_subset_of(const GenSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

bool GenSet::intersects(const GenSet& other) const {
  auto a = elems_.begin();
  auto b = other.elems_.begin();
  while (a != elems_.end() && b != other.elems_.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

Nat GenSet::sum() const {
  Nat total = 0;
  for (Nat x : elems_) {
    if (add_overflows(total, x)) throw DomainError("generator sum overflows 64 bits");
    total += x;
  }
  return total;
}

GenSet GenSet::without(const GenSet& k) const {
  GenSet out;
  std::set_difference(elems_.begin(), elems_.end(), k.elems_.begin(), k.elems_.end(),
                      std::back_inserter(out.elems_));
  return out;
}

GenSet GenSet::with(Nat x) const {
  std::vector<Nat> v = elems_;
  v.push_back(x);
  return GenSet(std::move(v));
}

GenSet GenSet::prefix(std::size_t n) const {
  GenSet out;
  out.elems_.assign(elems_.begin(), elems_.begin() + static_cast<std::ptrdiff_t>(std::min(n, elems_.size())));
  return out;
}

GenSet GenSet::select(std::uint64_t mask) const {
  GenSet out;
  for (std::size_t i = 0; i < elems_.size() && i < 64; ++i)
    if (mask >> i & 1U) out.elems_.push_back(elems_[i]);
  return out;
}

std::string GenSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < elems_.size(); ++i) os << (i ? "," : "") << elems_[i];
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(IndexDomain domain, std::vector<Index> members) : domain_(domain), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (domain_ == IndexDomain::Pair) {
    for (Index p : members_)
      if (pair_lo(p) >= pair_hi(p)) throw DomainError("pair index must satisfy i<j: " + format_index(domain_, p));
  }
}

bool IndexSet::contains(Index s) const { return std::binary_search(members_.begin(), members_.end(), s); }

bool IndexSet::is_subset_of(const IndexSet& other) const {
  if (domain_ != other.domain_) return empty();
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

// ---------------------------------------------------------------------------
// fs / pairs

boost::dynamic_bitset<> fs_bitmap(const GenSet& d, Nat bound) {
  if (d.empty()) throw DomainError("fs: generator set must be nonempty");
  if (bound > kBitmapLimit) throw BoundError("fs_bitmap: bound too large for a bitmap");
  boost::dynamic_bitset<> reach(static_cast<std::size_t>(bound));
  for (Nat x : d) {
    if (x >= bound) break;
    reach |= reach << static_cast<std::size_t>(x);
    reach.set(static_cast<std::size_t>(x));
  }
  return reach;
}

IndexSet fs(const GenSet& d, Nat bound) {
  if (d.empty()) throw DomainError("fs: generator set must be nonempty");
  std::vector<Index> out;
  if (bound <= kBitmapLimit) {
    auto reach = fs_bitmap(d, bound);
    out.reserve(reach.count());
    for (auto i = reach.find_first(); i != boost::dynamic_bitset<>::npos; i = reach.find_next(i)) out.push_back(i);
    return IndexSet(IndexDomain::Nat, std::move(out));
  }
  for (Nat x : d) {
    if (x >= bound) break;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i)
      if (!add_overflows(out[i], x) && out[i] + x < bound) out.push_back(out[i] + x);
    out.push_back(x);
  }
  return IndexSet(IndexDomain::Nat, std::move(out));
}

IndexSet pairs(const GenSet& d) {
  if (d.size() < 2) throw DomainError("pairs: need at least two generators");
  if (d.back() > kMaxPairVertex) throw DomainError("pairs: vertex exceeds 32-bit pair encoding");
  std::vector<Index> out;
  out.reserve(d.size() * (d.size() - 1) / 2);
  for (std::size_t a = 0; a < d.size(); ++a)
    for (std::size_t b = a + 1; b < d.size(); ++b) out.push_back(pair_index(d[a], d[b]));
  return IndexSet(IndexDomain::Pair, std::move(out));
}

// ---------------------------------------------------------------------------
// Very sparse sets

namespace {

std::vector<Nat> subset_sums(const GenSet& d) {
  const std::size_t n = d.size();
  std::vector<Nat> sums(std::size_t{1} << n, 0);
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
    sums[mask] = sums[mask & (mask - 1)] + d[low];
  }
  return sums;
}

bool overlap_less(const OverlapViolation& a, const OverlapViolation& b) {
  if (a.g != b.g) return a.g < b.g;
  return a.h < b.h;
}

}  // namespace

CertificationReport certify_very_sparse(const GenSet& d, const ExecPolicy& policy) {
  if (d.empty()) throw DomainError("certify_very_sparse: generator set must be nonempty");
  if (d.size() > kMaxVerySparseSize)
    throw DomainError("certify_very_sparse: exhaustive check limited to " + std::to_string(kMaxVerySparseSize) +
                      " elements");
  CertificationReport report;
  report.window = d.sum() + 1;

  const auto sums = subset_sums(d);
  const std::size_t full = sums.size();
  report.subsets_checked = full - 1;

  // (a) unique supports
  std::vector<std::pair<Nat, std::size_t>> sorted;
  sorted.reserve(full - 1);
  for (std::size_t m = 1; m < full; ++m) sorted.emplace_back(sums[m], m);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].first != sorted[i - 1].first) continue;
    const Nat value = sorted[i].first;
    std::vector<GenSet> supports;
    for (auto& [v, m] : sorted)
      if (v == value) supports.push_back(d.select(m));
    std::sort(supports.begin(), supports.end());
    report.collision = SupportCollision{value, supports[0], supports[1]};
    break;
  }

  // (b) overlapping double sums escape FS(D)
  const Nat window = report.window;
  std::optional<boost::dynamic_bitset<>> bitmap;
  if (window <= kBitmapLimit) bitmap = fs_bitmap(d, window);
  std::vector<Nat> sorted_sums;
  if (!bitmap) {
    for (auto& e : sorted) sorted_sums.push_back(e.first);
  }
  auto in_fs = [&](Nat v) {
    if (v >= window) return false;
    if (bitmap) return bitmap->test(static_cast<std::size_t>(v));
    return std::binary_search(sorted_sums.begin(), sorted_sums.end(), v);
  };

  const std::size_t chunks = 64;
  std::vector<std::uint64_t> chunk_counts(chunks, 0);
  std::vector<std::optional<OverlapViolation>> chunk_min(chunks);
  parallel_chunks(full - 1, policy, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    std::uint64_t count = 0;
    std::optional<OverlapViolation> best;
    for (std::size_t gi = begin; gi < end; ++gi) {
      const std::size_t g = gi + 1;
      for (std::size_t h = 1; h < full; ++h) {
        if ((g & h) == 0) continue;
        ++count;
        const Nat total = sums[g] + sums[h];
        if (!in_fs(total)) continue;
        OverlapViolation v{d.select(g), d.select(h), total};
        if (!best || overlap_less(v, *best)) best = std::move(v);
      }
    }
    chunk_counts[c] = count;
    chunk_min[c] = std::move(best);
  });
  for (std::size_t c = 0; c < chunks; ++c) {
    report.pairs_checked += chunk_counts[c];
    if (chunk_min[c] && (!report.overlap || overlap_less(*chunk_min[c], *report.overlap)))
      report.overlap = chunk_min[c];
  }

  report.pass = !report.collision && !report.overlap;
  return report;
}

VerySparseSet VerySparseSet::certify(const GenSet& d, const ExecPolicy& policy) {
  const auto report = certify_very_sparse(d, policy);
  if (!report.pass) {
    std::ostringstream msg;
    msg << "very sparse certification failed for " << d.to_string() << ": ";
    if (report.collision)
      msg << report.collision->value << " has supports " << report.collision->first.to_string() << " and "
          << report.collision->second.to_string();
    else
      msg << "G=" << report.overlap->g.to_string() << " H=" << report.overlap->h.to_string() << " gives "
          << report.overlap->total << " in FS(D)";
    throw ConstructionError(msg.str());
  }
  VerySparseSet out;
  out.elements_ = d;
  out.bound_ = report.window;
  const auto sums = subset_sums(d);
  out.sums_.reserve(sums.size() - 1);
  for (std::size_t m = 1; m < sums.size(); ++m) out.sums_.emplace_back(sums[m], static_cast<std::uint32_t>(m));
  std::sort(out.sums_.begin(), out.sums_.end());
  return out;
}

std::optional<std::uint32_t> VerySparseSet::support_mask(Nat a) const {
  auto it = std::lower_bound(sums_.begin(), sums_.end(), std::pair<Nat, std::uint32_t>{a, 0});
  if (it == sums_.end() || it->first != a) return std::nullopt;
  return it->second;
}

bool VerySparseSet::in_fs(Nat a) const { return support_mask(a).has_value(); }

GenSet VerySparseSet::support(Nat a) const {
  auto mask = support_mask(a);
  if (!mask) throw NotRepresentableError(std::to_string(a) + " is not a finite sum of " + elements_.to_string());
  return elements_.select(*mask);
}

std::size_t VerySparseSet::position_of(Nat element) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), element);
  if (it == elements_.end() || *it != element) throw DomainError(std::to_string(element) + " is not in D");
  return static_cast<std::size_t>(it - elements_.begin());
}

VerySparseSet generate_very_sparse(std::size_t size, Nat growth_factor, const ExecPolicy& policy) {
  if (size == 0) throw DomainError("generate_very_sparse: size must be at least 1");
  if (size > kMaxVerySparseSize) throw DomainError("generate_very_sparse: size too large to certify");
  std::vector<Nat> d{1};
  Nat total = 1;
  while (d.size() < size) {
    if (growth_factor != 0 && total > (std::numeric_limits<Nat>::max() - 1) / growth_factor)
      throw DomainError("generate_very_sparse: growth overflows 64 bits");
    const Nat next = growth_factor * total + 1;
    if (next <= d.back()) throw ConstructionError("generate_very_sparse: growth rule did not increase");
    if (add_overflows(total, next)) throw DomainError("generate_very_sparse: sum overflows 64 bits");
    d.push_back(next);
    total += next;
  }
  return VerySparseSet::certify(GenSet(std::move(d)), policy);
}

GenSet support(const VerySparseSet& d, Nat a) { return d.support(a); }

// ---------------------------------------------------------------------------
// TreeSeq

bool TreeSeq::is_prefix_of(const TreeSeq& t) const {
  return entries.size() <= t.entries.size() && std::equal(entries.begin(), entries.end(), t.entries.begin());
}

TreeSeq TreeSeq::extended(Nat n) const {
  TreeSeq out = *this;
  out.entries.push_back(n);
  return out;
}

TreeSeq TreeSeq::prefix(std::size_t n) const {
  return TreeSeq(std::vector<Nat>(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(std::min(n, length()))));
}

TreeSeq TreeSeq::padded_zeros(std::size_t n) const {
  TreeSeq out = *this;
  out.entries.resize(entries.size() + n, 0);
  return out;
}

std::string TreeSeq::to_string() const {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < entries.size(); ++i) os << (i ? "," : "") << entries[i];
  os << '>';
  return os.str();
}

// ---------------------------------------------------------------------------
// TreeBijection

namespace {

// Sequences of length l first listed at stage k.
Nat new_at_stage(unsigned l, unsigned k) {
  const Nat all = checked_pow(k + 1, l);
  if (k >= 1 && l <= k - 1) return all - checked_pow(k, l);
  return all;
}

}  // namespace

Nat TreeBijection::stage_of(const TreeSeq& s) {
  Nat k = s.length();
  for (Nat e : s.entries) k = std::max(k, e);
  return k;
}

Nat TreeBijection::listed_through(unsigned k) {
  if (k > kMaxStage) throw BoundError("tree enumeration supports stages up to " + std::to_string(kMaxStage));
  Nat total = 0;
  for (unsigned l = 0; l <= k; ++l) total += checked_pow(k + 1, l);
  return total;
}

Nat TreeBijection::index_of(const TreeSeq& s) const {
  const Nat stage = stage_of(s);
  if (stage > kMaxStage) throw BoundError("sequence " + s.to_string() + " lies beyond the supported stages");
  const auto k = static_cast<unsigned>(stage);
  const auto l = static_cast<unsigned>(s.length());

  Nat index = k == 0 ? 0 : listed_through(k - 1);
  for (unsigned m = 0; m < l; ++m) index += new_at_stage(m, k);

  // rank among length-l sequences first listed at stage k
  Nat all_less = 0;
  for (unsigned p = 0; p < l; ++p) all_less += s[p] * checked_pow(k + 1, l - p - 1);
  Nat old_less = 0;
  if (k >= 1 && l <= k - 1) {
    for (unsigned p = 0; p < l; ++p) {
      old_less += std::min<Nat>(s[p], k) * checked_pow(k, l - p - 1);
      if (s[p] > k - 1) break;
    }
  }
  return index + all_less - old_less;
}

TreeSeq TreeBijection::seq_at(Nat i) const {
  unsigned k = 0;
  while (listed_through(k) <= i) {
    if (k == kMaxStage) throw BoundError("tree index " + std::to_string(i) + " beyond supported stages");
    ++k;
  }
  Nat r = i - (k == 0 ? 0 : listed_through(k - 1));
  unsigned l = 0;
  for (;; ++l) {
    const Nat c = new_at_stage(l, k);
    if (r < c) break;
    r -= c;
  }
  TreeSeq out;
  bool is_new = l == k;
  for (unsigned p = 0; p < l; ++p) {
    const unsigned rem = l - p - 1;
    for (Nat d = 0; d <= k; ++d) {
      const bool now_new = is_new || d == k;
      const Nat cnt = now_new ? checked_pow(k + 1, rem) : checked_pow(k + 1, rem) - checked_pow(k, rem);
      if (r < cnt) {
        out.entries.push_back(d);
        is_new = now_new;
        break;
      }
      r -= cnt;
    }
  }
  return out;
}

Nat tree_index(const TreeBijection& f, const TreeSeq& s) { return f.index_of(s); }
TreeSeq tree_seq(const TreeBijection& f, Nat i) { return f.seq_at(i); }

}  // namespace ideal_lab
