#include "qspace/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qspace {

namespace {
double& epsilon_storage() {
  static double eps = 1e-12;
  return eps;
}
}  // namespace

double epsilon() { return epsilon_storage(); }

void set_epsilon(double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  epsilon_storage() = eps;
}

const char* to_string(Statistics stats) {
  return stats == Statistics::Boson ? "boson" : "fermion";
}

void FockSpace::require_mode(ModeIndex m) const {
  if (!valid_mode(m)) {
    throw std::invalid_argument("mode index " + std::to_string(m) +
                                " out of range for space with " +
                                std::to_string(num_modes) + " modes");
  }
}

OccupationState OccupationState::from_counts(Statistics stats, std::vector<Entry> entries) {
  OccupationState s(stats);
  ModeIndex prev = 0;
  bool first = true;
  for (const auto& [mode, count] : entries) {
    if (!first && mode <= prev) {
      throw std::invalid_argument("occupation entries must be strictly increasing in mode");
    }
    if (count == 0) {
      throw std::invalid_argument("occupation entries must have positive counts");
    }
    if (stats == Statistics::Fermion && count > 1) {
      throw std::invalid_argument("fermion occupation above 1");
    }
    s.total_n_ += count;
    prev = mode;
    first = false;
  }
  s.entries_ = std::move(entries);
  return s;
}

std::uint32_t OccupationState::occupation(ModeIndex m) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), m,
                             [](const Entry& e, ModeIndex v) { return e.first < v; });
  return (it != entries_.end() && it->first == m) ? it->second : 0;
}

std::vector<ModeIndex> OccupationState::mode_sequence() const {
  std::vector<ModeIndex> out;
  out.reserve(total_n_);
  for (const auto& [mode, count] : entries_) {
    out.insert(out.end(), count, mode);
  }
  return out;
}

std::vector<std::uint32_t> OccupationState::dense(std::size_t num_modes) const {
  std::vector<std::uint32_t> out(num_modes, 0);
  for (const auto& [mode, count] : entries_) {
    if (mode >= num_modes) {
      throw std::invalid_argument("state occupies mode outside the requested range");
    }
    out[mode] = count;
  }
  return out;
}

std::uint32_t OccupationState::particles_below(ModeIndex m) const {
  std::uint32_t n = 0;
  for (const auto& [mode, count] : entries_) {
    if (mode >= m) break;
    n += count;
  }
  return n;
}

OccupationState OccupationState::with_increment(ModeIndex m) const {
  OccupationState out(*this);
  auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), m,
                             [](const Entry& e, ModeIndex v) { return e.first < v; });
  if (it != out.entries_.end() && it->first == m) {
    ++it->second;
  } else {
    out.entries_.insert(it, {m, 1});
  }
  ++out.total_n_;
  return out;
}

OccupationState OccupationState::with_decrement(ModeIndex m) const {
  OccupationState out(*this);
  auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), m,
                             [](const Entry& e, ModeIndex v) { return e.first < v; });
  if (it == out.entries_.end() || it->first != m) {
    throw std::invalid_argument("with_decrement on unoccupied mode");
  }
  if (--it->second == 0) {
    out.entries_.erase(it);
  }
  --out.total_n_;
  return out;
}

bool OccupationState::operator<(const OccupationState& other) const {
  if (stats_ != other.stats_) {
    return static_cast<int>(stats_) < static_cast<int>(other.stats_);
  }
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first != b->first) {
      // the side whose next occupied mode comes later has count 0 at the
      // earlier mode, hence is dense-lexicographically smaller
      return a->first > b->first;
    }
    if (a->second != b->second) {
      return a->second < b->second;
    }
    ++a;
    ++b;
  }
  return a == entries_.end() && b != other.entries_.end();
}

std::string to_string(const OccupationState& state) {
  std::ostringstream os;
  os << '|';
  bool first = true;
  for (const auto& [mode, count] : state.entries()) {
    if (!first) os << ' ';
    os << mode << ':' << count;
    first = false;
  }
  os << ')';
  return os.str();
}

double occupation_factorial(const OccupationState& state) {
  double prod = 1.0;
  for (const auto& [mode, count] : state.entries()) {
    for (std::uint32_t k = 2; k <= count; ++k) {
      prod *= static_cast<double>(k);
    }
  }
  return prod;
}

int sort_parity(std::span<const ModeIndex> modes) {
  // inversion count; list lengths stay tiny at desk scale
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      if (modes[i] > modes[j]) ++inversions;
    }
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

std::optional<SignedState> make_state(const FockSpace& space,
                                      std::span<const ModeIndex> modes) {
  for (ModeIndex m : modes) {
    space.require_mode(m);
  }
  if (space.stats == Statistics::Fermion) {
    std::vector<ModeIndex> sorted(modes.begin(), modes.end());
    int sign = sort_parity(modes);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return std::nullopt;  // Pauli: repeated mode, null-norm class
    }
    std::vector<OccupationState::Entry> entries;
    entries.reserve(sorted.size());
    for (ModeIndex m : sorted) {
      entries.push_back({m, 1});
    }
    return SignedState{OccupationState::from_counts(space.stats, std::move(entries)), sign};
  }
  std::vector<ModeIndex> sorted(modes.begin(), modes.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<OccupationState::Entry> entries;
  for (ModeIndex m : sorted) {
    if (!entries.empty() && entries.back().first == m) {
      ++entries.back().second;
    } else {
      entries.push_back({m, 1});
    }
  }
  return SignedState{OccupationState::from_counts(space.stats, std::move(entries)), 1};
}

FockVector FockVector::vacuum(Statistics stats) {
  FockVector v(stats);
  v.add_term(OccupationState(stats), Complex(1.0, 0.0));
  return v;
}

FockVector FockVector::unit(const OccupationState& state) {
  FockVector v(state.stats());
  v.add_term(state, Complex(1.0, 0.0));
  return v;
}

Complex FockVector::amplitude(const OccupationState& state) const {
  auto it = terms_.find(state);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void FockVector::add_term(const OccupationState& state, Complex amp) {
  if (state.stats() != stats_) {
    throw std::invalid_argument("mixed statistics in FockVector term");
  }
  auto [it, inserted] = terms_.try_emplace(state, amp);
  if (!inserted) {
    it->second += amp;
  }
  if (std::abs(it->second) < epsilon()) {
    terms_.erase(it);
  }
}

FockVector& FockVector::operator+=(const FockVector& other) {
  if (other.stats_ != stats_) {
    throw std::invalid_argument("mixed statistics in vector addition");
  }
  for (const auto& [state, amp] : other.terms_) {
    add_term(state, amp);
  }
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& other) {
  if (other.stats_ != stats_) {
    throw std::invalid_argument("mixed statistics in vector subtraction");
  }
  for (const auto& [state, amp] : other.terms_) {
    add_term(state, -amp);
  }
  return *this;
}

FockVector& FockVector::operator*=(Complex scale) {
  if (std::abs(scale) < epsilon()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scale;
    if (std::abs(it->second) < epsilon()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

FockVector basis_vector(const FockSpace& space, std::span<const ModeIndex> modes) {
  auto made = make_state(space, modes);
  FockVector v(space.stats);
  if (made) {
    v.add_term(made->state, Complex(static_cast<double>(made->sign), 0.0));
  }
  return v;
}

FockVector basis_vector(const FockSpace& space, std::initializer_list<ModeIndex> modes) {
  return basis_vector(space, std::span<const ModeIndex>(modes.begin(), modes.size()));
}

namespace {

void enumerate_counts(const FockSpace& space, std::uint32_t budget, bool exact,
                      std::size_t mode, std::vector<OccupationState::Entry>& acc,
                      std::vector<OccupationState>& out) {
  if (mode == space.num_modes) {
    if (!exact || budget == 0) {
      out.push_back(OccupationState::from_counts(space.stats, acc));
    }
    return;
  }
  std::uint32_t cap = budget;
  if (space.stats == Statistics::Fermion) {
    cap = std::min<std::uint32_t>(cap, 1);
  }
  for (std::uint32_t c = 0; c <= cap; ++c) {
    if (c > 0) acc.push_back({static_cast<ModeIndex>(mode), c});
    enumerate_counts(space, budget - c, exact, mode + 1, acc, out);
    if (c > 0) acc.pop_back();
  }
}

}  // namespace

std::vector<OccupationState> enumerate_states_up_to(const FockSpace& space, std::uint32_t n_max) {
  std::vector<OccupationState> out;
  std::vector<OccupationState::Entry> acc;
  enumerate_counts(space, n_max, false, 0, acc, out);
  return out;
}

std::vector<OccupationState> enumerate_sector(const FockSpace& space, std::uint32_t n) {
  std::vector<OccupationState> out;
  std::vector<OccupationState::Entry> acc;
  enumerate_counts(space, n, true, 0, acc, out);
  return out;
}

}  // namespace qspace
