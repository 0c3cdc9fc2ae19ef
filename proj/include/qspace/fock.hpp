#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qspace {

using Complex = std::complex<double>;
using ModeIndex = std::uint32_t;

enum class Statistics { Boson, Fermion };

const char* to_string(Statistics stats);

// Global numeric epsilon. Amplitude pruning and the null-norm threshold share
// this one constant (default 1e-12). The CLI may override it via QSPACE_TOL.
double epsilon();
void set_epsilon(double eps);

/// A finite family of single-particle modes with fixed statistics.
/// Mode ids run 0 .. num_modes-1; the integer order on ids is the canonical
/// order used everywhere (state canonicalization, fermionic signs, bases).
struct FockSpace {
  Statistics stats;
  std::size_t num_modes;

  bool valid_mode(ModeIndex m) const { return m < num_modes; }
  void require_mode(ModeIndex m) const;
};

/// Occupation-number basis state in canonical form: entries sorted by
/// increasing mode, all counts positive, fermion counts exactly 1.
/// There is no per-particle slot anywhere in the representation, so a
/// "permutation of particles" is not expressible, only occupation counts.
class OccupationState {
 public:
  using Entry = std::pair<ModeIndex, std::uint32_t>;

  explicit OccupationState(Statistics stats) : stats_(stats) {}

  /// Builds from (mode, count) pairs; validates canonical form.
  static OccupationState from_counts(Statistics stats, std::vector<Entry> entries);

  Statistics stats() const { return stats_; }
  std::uint32_t total_n() const { return total_n_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_vacuum() const { return entries_.empty(); }

  std::uint32_t occupation(ModeIndex m) const;
  bool occupies(ModeIndex m) const { return occupation(m) > 0; }

  /// Modes repeated per occupation count, in increasing order.
  std::vector<ModeIndex> mode_sequence() const;
  std::vector<std::uint32_t> dense(std::size_t num_modes) const;

  /// Number of occupied modes strictly below m, counted with multiplicity.
  /// For canonical fermion states this is the anticommutation sign exponent.
  std::uint32_t particles_below(ModeIndex m) const;

  /// Copy with one particle added/removed at m; keeps canonical form.
  OccupationState with_increment(ModeIndex m) const;
  OccupationState with_decrement(ModeIndex m) const;  // requires occupation(m) > 0

  bool operator==(const OccupationState& other) const = default;
  /// Strict order: lexicographic on the dense occupation vector
  /// (modes ascending, absent modes read as 0).
  bool operator<(const OccupationState& other) const;

 private:
  Statistics stats_;
  std::vector<Entry> entries_;
  std::uint32_t total_n_ = 0;
};

std::string to_string(const OccupationState& state);

/// Product of factorials of the occupation counts. This is the squared norm
/// of the raw basis state under the symmetric permutation-sum product; it is
/// 1 for every canonical fermion state.
double occupation_factorial(const OccupationState& state);

/// Parity of the permutation that sorts `modes` ascending: +1 even, -1 odd.
/// Ill-defined for sequences with repeats (callers must exclude them).
int sort_parity(std::span<const ModeIndex> modes);

struct SignedState {
  OccupationState state;
  int sign;  // +1 or -1
};

/// Canonicalizes a mode list into an occupation state.
/// Bosons: the multiset of modes, sign always +1 (any permutation of the
/// list yields the identical state). Fermions: a repeated mode yields
/// nullopt (the Pauli-excluded null-norm class); otherwise the sorted state
/// with the parity of the sorting permutation as sign.
/// Throws std::invalid_argument for mode ids outside the space.
std::optional<SignedState> make_state(const FockSpace& space,
                                      std::span<const ModeIndex> modes);

/// Sparse complex linear combination of occupation states (all sharing one
/// Statistics). The empty map is the zero vector. Amplitudes with magnitude
/// below epsilon() are pruned on every mutation.
class FockVector {
 public:
  using TermMap = std::map<OccupationState, Complex>;

  explicit FockVector(Statistics stats) : stats_(stats) {}

  static FockVector zero(Statistics stats) { return FockVector(stats); }
  static FockVector vacuum(Statistics stats);
  /// Unit amplitude on one canonical state.
  static FockVector unit(const OccupationState& state);

  Statistics stats() const { return stats_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  Complex amplitude(const OccupationState& state) const;

  /// Accumulates amp onto state, pruning results below epsilon().
  void add_term(const OccupationState& state, Complex amp);

  FockVector& operator+=(const FockVector& other);
  FockVector& operator-=(const FockVector& other);
  FockVector& operator*=(Complex scale);

  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(Complex scale, FockVector v) { return v *= scale; }
  friend FockVector operator-(FockVector v) { return v *= Complex(-1.0, 0.0); }

 private:
  Statistics stats_;
  TermMap terms_;
};

/// The basis vector for a mode list: sign folded into the amplitude.
/// A Pauli-excluded fermionic list gives the zero vector.
FockVector basis_vector(const FockSpace& space, std::span<const ModeIndex> modes);
FockVector basis_vector(const FockSpace& space, std::initializer_list<ModeIndex> modes);

/// All canonical states with total_n <= n_max (or total_n == exactly n for
/// the sector variant), in dense-lexicographic order.
std::vector<OccupationState> enumerate_states_up_to(const FockSpace& space, std::uint32_t n_max);
std::vector<OccupationState> enumerate_sector(const FockSpace& space, std::uint32_t n);

}  // namespace qspace
