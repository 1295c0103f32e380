// homology.hpp — abelianization and cycle-space checks, and exact commutator
// length in free groups: pairings of inverse letter occurrences around a
// circle, their GF(2) linking matrices, and the minimum half-rank over all
// pairings. Includes the all-ones-off-diagonal matrix family M_n with its
// exact integer determinant.
#pragma once

#include <climits>
#include <cstdint>

#include "graphends/invlimit.hpp"

namespace graphends {

// Signed occurrence count per generator; all zero iff the word lies in the
// commutator subgroup.
inline std::map<int, long long> exponent_sums(const Word& w) {
  std::map<int, long long> sums;
  for (int g = 0; g < w.rank; ++g) sums[g] = 0;
  for (const Letter& l : w.letters) sums[l.gen] += l.sign;
  return sums;
}

enum class CycleCoefficients { Z, Z2 };

// Whether a closed edge path is trivial in the topological cycle space at
// this level: over Z/2 every edge is traversed an even number of times,
// over Z every edge is traversed the same number of times in both
// directions. Operates on edges, not chords.
inline bool cycle_space_trivial(const EdgePath& path, CycleCoefficients coefficients) {
  std::map<EdgeId, std::pair<long long, long long>, IdLess> counts;  // (signed, total)
  for (const OrientedEdge& s : path) {
    auto& [net, total] = counts[s.edge];
    net += s.reverse ? -1 : 1;
    ++total;
  }
  for (const auto& [id, c] : counts) {
    if (coefficients == CycleCoefficients::Z && c.first != 0) return false;
    if (coefficients == CycleCoefficients::Z2 && c.second % 2 != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pairings and circle graphs.

// A perfect matching of the letter positions of `word` in which matched
// positions carry the same generator with opposite signs. Pairs are stored
// as (smaller position, larger position), sorted.
struct Pairing {
  Word word;
  std::vector<std::pair<int, int>> pairs;
};

namespace detail {

struct GeneratorOccurrences {
  int gen;
  std::vector<int> plus;   // positions with sign +1, ascending
  std::vector<int> minus;  // positions with sign -1, ascending
};

inline std::vector<GeneratorOccurrences> occurrences_by_generator(const Word& w) {
  std::map<int, GeneratorOccurrences> occ;
  for (int pos = 0; pos < static_cast<int>(w.letters.size()); ++pos) {
    const Letter& l = w.letters[static_cast<std::size_t>(pos)];
    auto& o = occ[l.gen];
    o.gen = l.gen;
    (l.sign > 0 ? o.plus : o.minus).push_back(pos);
  }
  std::vector<GeneratorOccurrences> out;
  for (auto& [g, o] : occ) {
    if (o.plus.size() != o.minus.size())
      throw InvalidArgument("pairings require every exponent sum to be zero (generator " +
                            std::to_string(g) + ")");
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace detail

// Number of pairings of w: the product over generators of m_g! where m_g is
// the +1 occurrence count. Saturates at ULLONG_MAX.
inline unsigned long long pairing_count(const Word& w) {
  unsigned long long total = 1;
  for (const auto& occ : detail::occurrences_by_generator(w)) {
    for (unsigned long long k = 2; k <= occ.plus.size(); ++k) {
      if (total > ULLONG_MAX / k) return ULLONG_MAX;
      total *= k;
    }
  }
  return total;
}

// Exhaustive, deterministic stream of pairings: generators in ascending
// order, and for each generator every bijection from its +1 positions to its
// -1 positions, iterated in lexicographic order.
class PairingEnumerator {
 public:
  explicit PairingEnumerator(Word w)
      : word_(std::move(w)), occ_(detail::occurrences_by_generator(word_)) {
    for (const auto& o : occ_) {
      perms_.emplace_back(o.minus.size());
      for (std::size_t i = 0; i < o.minus.size(); ++i) perms_.back()[i] = i;
    }
  }

  std::optional<Pairing> next() {
    if (done_) return std::nullopt;
    Pairing p{word_, {}};
    for (std::size_t g = 0; g < occ_.size(); ++g) {
      for (std::size_t k = 0; k < occ_[g].plus.size(); ++k) {
        int a = occ_[g].plus[k];
        int b = occ_[g].minus[perms_[g][k]];
        p.pairs.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    std::sort(p.pairs.begin(), p.pairs.end());
    advance();
    return p;
  }

 private:
  void advance() {
    for (std::size_t g = perms_.size(); g-- > 0;) {
      if (std::next_permutation(perms_[g].begin(), perms_[g].end())) return;
      // wrapped to identity; carry to the previous generator
    }
    done_ = true;
  }

  Word word_;
  std::vector<detail::GeneratorOccurrences> occ_;
  std::vector<std::vector<std::size_t>> perms_;
  bool done_ = false;
};

// ---------------------------------------------------------------------------
// GF(2) matrices and exact integer determinants.

class Gf2Matrix {
 public:
  explicit Gf2Matrix(std::size_t n) : n_(n), rows_(n, std::vector<std::uint64_t>((n + 63) / 64, 0)) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i, std::size_t j) const { return (rows_[i][j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    if (v)
      rows_[i][j / 64] |= mask;
    else
      rows_[i][j / 64] &= ~mask;
  }

  const std::vector<std::vector<std::uint64_t>>& rows() const { return rows_; }
  std::vector<std::vector<std::uint64_t>>& rows() { return rows_; }

 private:
  std::size_t n_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

// Rank over GF(2) by row elimination. Symmetric zero-diagonal inputs are
// alternating forms, so their rank is always even.
inline std::size_t gf2_rank(Gf2Matrix m) {
  const std::size_t n = m.size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && !m.get(pivot, col)) ++pivot;
    if (pivot == n) continue;
    std::swap(m.rows()[pivot], m.rows()[rank]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == rank || !m.get(i, col)) continue;
      for (std::size_t b = 0; b < m.rows()[i].size(); ++b) m.rows()[i][b] ^= m.rows()[rank][b];
    }
    ++rank;
  }
  return rank;
}

// Linking matrix of a pairing: chords of the circle indexed by the sorted
// pair list; entry (i, j) is 1 iff the chords interleave in cyclic order,
// i.e. exactly one endpoint of pair j lies strictly between the endpoints of
// pair i. Symmetric with zero diagonal.
inline Gf2Matrix circle_matrix(const Pairing& p) {
  const std::size_t k = p.pairs.size();
  Gf2Matrix m(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto [ai, bi] = p.pairs[i];
      const auto [aj, bj] = p.pairs[j];
      const bool aj_inside = ai < aj && aj < bi;
      const bool bj_inside = ai < bj && bj < bi;
      if (aj_inside != bj_inside) {
        m.set(i, j, true);
        m.set(j, i, true);
      }
    }
  }
  return m;
}

using IntMatrix = std::vector<std::vector<long long>>;

namespace detail {

__extension__ typedef __int128 int128;

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in determinant");
  return r;
}

}  // namespace detail

// Exact integer determinant by fraction-free (Bareiss) elimination in 128-bit
// intermediates with overflow checks.
inline long long int_det(const IntMatrix& matrix) {
  const std::size_t n = matrix.size();
  for (const auto& row : matrix)
    if (row.size() != n) throw InvalidArgument("int_det requires a square matrix");
  if (n == 0) return 1;

  std::vector<std::vector<detail::int128>> a(n, std::vector<detail::int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = matrix[i][j];

  int sign = 1;
  detail::int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && a[pivot][k] == 0) ++pivot;
      if (pivot == n) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        detail::int128 num = detail::checked_mul(a[i][j], a[k][k]);
        detail::int128 sub = detail::checked_mul(a[i][k], a[k][j]);
        if (__builtin_sub_overflow(num, sub, &num)) throw Error("integer overflow in determinant");
        a[i][j] = num / prev;  // exact division in Bareiss elimination
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  const detail::int128 det = sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
  if (det > LLONG_MAX || det < LLONG_MIN) throw Error("determinant exceeds 64 bits");
  return static_cast<long long>(det);
}

// The n x n matrix with zero diagonal and ones elsewhere: the linking matrix
// of the unique pairing of e_1...e_n e_1^{-1}...e_n^{-1}. Its determinant is
// (-1)^(n-1) (n-1); its GF(2) rank is n for even n and n-1 for odd n.
inline IntMatrix ladder_matrix(int n) {
  if (n < 1) throw InvalidArgument("ladder_matrix requires n >= 1");
  IntMatrix m(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 1));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
  return m;
}

inline Gf2Matrix to_gf2(const IntMatrix& m) {
  Gf2Matrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) throw InvalidArgument("matrix must be square");
    for (std::size_t j = 0; j < m.size(); ++j) out.set(i, j, (m[i][j] % 2 + 2) % 2 == 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commutator length.

inline constexpr unsigned long long kDefaultPairingCap = 1'000'000;

struct CommLengthResult {
  bool in_commutator_subgroup = false;
  int cl = 0;                            // meaningful iff in_commutator_subgroup
  Pairing witness;                       // a pairing of minimal rank (enumeration order tie-break)
  unsigned long long pairings_considered = 0;
};

// Minimum of rank(M_P)/2 over all pairings P of the reduced word, or the
// NotInCommutatorSubgroup marker when some exponent sum is nonzero. The word
// is reduced first; commutator length only depends on the group element.
// Enumeration stops early once the theoretical minimum for a nonempty
// reduced word (rank 2) is reached. Throws CapExceeded instead of ever
// approximating when the pairing count exceeds the cap.
inline CommLengthResult commutator_length(const Word& w,
                                          unsigned long long pairing_cap = kDefaultPairingCap) {
  const ReducedWord rw = reduce(w);
  for (const auto& [g, sum] : exponent_sums(rw.as_word()))
    if (sum != 0) return {false, 0, {}, 0};

  CommLengthResult result;
  result.in_commutator_subgroup = true;
  result.witness.word = rw.as_word();
  if (rw.empty()) return result;

  const unsigned long long total = pairing_count(rw.as_word());
  if (total > pairing_cap)
    throw CapExceeded("word has " + std::to_string(total) + " pairings, above the cap of " +
                      std::to_string(pairing_cap));

  PairingEnumerator en(rw.as_word());
  std::size_t best = SIZE_MAX;
  while (auto p = en.next()) {
    ++result.pairings_considered;
    const std::size_t rank = gf2_rank(circle_matrix(*p));
    if (rank < best) {
      best = rank;
      result.witness = std::move(*p);
    }
    // A nonempty reduced word admits no pairing of rank 0: an unlinked
    // pairing would have an innermost pair, i.e. an adjacent inverse pair.
    if (best == 2) break;
  }
  result.cl = static_cast<int>(best / 2);
  return result;
}

// ---------------------------------------------------------------------------
// Per-level homology report for a loop.

struct HomologyLevelRow {
  int level = 0;
  std::vector<int> word;  // reduced trace, JSON-style signed letters
  bool in_commutator_subgroup = false;
  std::optional<int> cl;
  bool cycle_trivial_z = false;
  bool cycle_trivial_z2 = false;
};

struct HomologyReport {
  std::string loop;
  std::string family;
  int max_level = 0;
  std::vector<HomologyLevelRow> rows;
  bool non_nullhomologous_evidence = false;
};

// Tabulates commutator length and cycle-space verdicts of the level-n traces
// for n = 1..max_level. Growing commutator length alongside trivial Z cycle
// space is the finite-level evidence that the loop is not null-homologous
// even though it dies in the cycle space.
inline HomologyReport nonnullhomologous_report(const LoopSpec& loop, const GraphFamily& family,
                                               int max_level,
                                               unsigned long long pairing_cap = kDefaultPairingCap) {
  if (max_level < 1) throw InvalidArgument("report requires max_level >= 1");
  HomologyReport report;
  report.loop = loop.name;
  report.family = family.name();
  report.max_level = max_level;

  for (int n = 1; n <= max_level; ++n) {
    const EdgePath path = theta_trace(loop, family, n);
    const SpanningTree tree = spanning_tree(truncate(family, n).graph);
    const ReducedWord word = reduce(trace_word(path, tree));

    HomologyLevelRow row;
    row.level = n;
    for (const Letter& l : word.letters()) row.word.push_back(l.sign * (l.gen + 1));
    row.cycle_trivial_z = cycle_space_trivial(path, CycleCoefficients::Z);
    row.cycle_trivial_z2 = cycle_space_trivial(path, CycleCoefficients::Z2);
    const CommLengthResult cl = commutator_length(word.as_word(), pairing_cap);
    row.in_commutator_subgroup = cl.in_commutator_subgroup;
    if (cl.in_commutator_subgroup) row.cl = cl.cl;
    report.rows.push_back(std::move(row));
  }

  bool all_z = true, all_in = true, nondecreasing = true;
  for (const HomologyLevelRow& row : report.rows) {
    all_z = all_z && row.cycle_trivial_z;
    all_in = all_in && row.in_commutator_subgroup;
  }
  if (all_in)
    for (std::size_t i = 1; i < report.rows.size(); ++i)
      nondecreasing = nondecreasing && *report.rows[i].cl >= *report.rows[i - 1].cl;
  report.non_nullhomologous_evidence = all_z && all_in && nondecreasing && report.rows.size() > 1 &&
                                       *report.rows.back().cl > *report.rows.front().cl;
  return report;
}

}  // namespace graphends
