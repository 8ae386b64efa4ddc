#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cik {

inline constexpr std::size_t kMaxWorlds = 64;

/// Identity of one world table. Sets built against different tables never mix.
struct Universe {
  std::uint32_t id = 0;
  std::uint32_t size = 0;

  friend bool operator==(Universe, Universe) = default;
};

struct WorldId {
  std::size_t index = 0;
  std::string name;
};

/// A subset of a finite world universe, stored as a 64-bit mask.
///
/// Binary operations require both operands to come from the same universe
/// and throw DomainError otherwise.
class WorldSet {
 public:
  using Bits = std::uint64_t;

  WorldSet() = default;

  static WorldSet empty(Universe u) { return WorldSet(u, 0); }
  static WorldSet full(Universe u) { return WorldSet(u, mask_for(u.size)); }
  static WorldSet from_bits(Universe u, Bits bits);
  static WorldSet singleton(Universe u, std::size_t index);

  Universe universe() const { return universe_; }
  Bits bits() const { return bits_; }

  bool empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == mask_for(universe_.size); }
  std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool contains(std::size_t index) const { return index < 64 && ((bits_ >> index) & 1U) != 0; }

  bool subset_of(const WorldSet& other) const;
  bool intersects(const WorldSet& other) const;

  WorldSet complement() const { return WorldSet(universe_, ~bits_ & mask_for(universe_.size)); }
  WorldSet with(std::size_t index) const;
  WorldSet without(std::size_t index) const;

  WorldSet operator|(const WorldSet& o) const;
  WorldSet operator&(const WorldSet& o) const;
  WorldSet operator-(const WorldSet& o) const;
  WorldSet& operator|=(const WorldSet& o) { return *this = *this | o; }
  WorldSet& operator&=(const WorldSet& o) { return *this = *this & o; }
  WorldSet& operator-=(const WorldSet& o) { return *this = *this - o; }

  /// Member indices in increasing order.
  std::vector<std::size_t> members() const;

  template <typename F>
  void for_each(F&& f) const {
    for (Bits b = bits_; b != 0; b &= b - 1) f(static_cast<std::size_t>(std::countr_zero(b)));
  }

  friend bool operator==(const WorldSet&, const WorldSet&) = default;

  static constexpr Bits mask_for(std::uint32_t size) {
    return size >= 64 ? ~Bits{0} : ((Bits{1} << size) - 1);
  }

 private:
  WorldSet(Universe u, Bits bits) : universe_(u), bits_(bits) {}
  void require_same(const WorldSet& o) const;

  Universe universe_{};
  Bits bits_ = 0;
};

/// Ordered and named world universe. Shared by every set of one frame.
class WorldTable {
 public:
  /// Throws InputError on empty names, duplicates, an empty list, or more
  /// than kMaxWorlds worlds.
  static std::shared_ptr<const WorldTable> make(std::vector<std::string> names);

  Universe universe() const { return universe_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  WorldId id(std::size_t index) const { return {index, names_.at(index)}; }

  /// Throws InputError naming the unknown world.
  std::size_t index_of(std::string_view name) const;
  bool has(std::string_view name) const { return index_.count(std::string(name)) != 0; }

  WorldSet empty_set() const { return WorldSet::empty(universe_); }
  WorldSet full_set() const { return WorldSet::full(universe_); }

  /// Builds a set from names; throws InputError listing every unknown name.
  WorldSet set_of(const std::vector<std::string>& names) const;

  /// Parses "x,y,z" (whitespace tolerant). "" and "{}" denote the empty set.
  WorldSet parse_set(std::string_view text) const;

  std::vector<std::string> names_of(const WorldSet& s) const;

  /// Renders as "{x, z}".
  std::string format(const WorldSet& s) const;

 private:
  WorldTable() = default;

  Universe universe_{};
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace cik

template <>
struct std::hash<cik::WorldSet> {
  std::size_t operator()(const cik::WorldSet& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits() ^ (std::uint64_t{s.universe().id} << 56));
  }
};
