#include "cik/world_set.hpp"

#include <atomic>
#include <sstream>

#include "cik/error.hpp"

namespace cik {

namespace {

std::atomic<std::uint32_t> next_universe_id{1};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

WorldSet WorldSet::from_bits(Universe u, Bits bits) {
  if ((bits & ~mask_for(u.size)) != 0) throw DomainError("world set has members outside its universe");
  return WorldSet(u, bits);
}

WorldSet WorldSet::singleton(Universe u, std::size_t index) {
  if (index >= u.size) throw DomainError("world index out of range");
  return WorldSet(u, Bits{1} << index);
}

void WorldSet::require_same(const WorldSet& o) const {
  if (!(universe_ == o.universe_)) throw DomainError("world sets belong to different frames");
}

bool WorldSet::subset_of(const WorldSet& other) const {
  require_same(other);
  return (bits_ & ~other.bits_) == 0;
}

bool WorldSet::intersects(const WorldSet& other) const {
  require_same(other);
  return (bits_ & other.bits_) != 0;
}

WorldSet WorldSet::with(std::size_t index) const { return *this | singleton(universe_, index); }

WorldSet WorldSet::without(std::size_t index) const { return *this - singleton(universe_, index); }

WorldSet WorldSet::operator|(const WorldSet& o) const {
  require_same(o);
  return WorldSet(universe_, bits_ | o.bits_);
}

WorldSet WorldSet::operator&(const WorldSet& o) const {
  require_same(o);
  return WorldSet(universe_, bits_ & o.bits_);
}

WorldSet WorldSet::operator-(const WorldSet& o) const {
  require_same(o);
  return WorldSet(universe_, bits_ & ~o.bits_);
}

std::vector<std::size_t> WorldSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::shared_ptr<const WorldTable> WorldTable::make(std::vector<std::string> names) {
  if (names.empty()) throw InputError("world table is empty");
  if (names.size() > kMaxWorlds) {
    throw InputError("too many worlds: " + std::to_string(names.size()) + " (limit " +
                     std::to_string(kMaxWorlds) + ")");
  }
  auto table = std::shared_ptr<WorldTable>(new WorldTable());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw InputError("world name at position " + std::to_string(i) + " is empty");
    if (!table->index_.emplace(names[i], i).second) throw InputError("duplicate world name '" + names[i] + "'");
  }
  table->names_ = std::move(names);
  table->universe_ = Universe{next_universe_id.fetch_add(1), static_cast<std::uint32_t>(table->names_.size())};
  return table;
}

std::size_t WorldTable::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw InputError("unknown world '" + std::string(name) + "'");
  return it->second;
}

WorldSet WorldTable::set_of(const std::vector<std::string>& names) const {
  WorldSet::Bits bits = 0;
  std::vector<std::string> unknown;
  for (const auto& n : names) {
    auto it = index_.find(n);
    if (it == index_.end()) {
      unknown.push_back(n);
    } else {
      bits |= WorldSet::Bits{1} << it->second;
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown world";
    msg += unknown.size() > 1 ? "s: " : ": ";
    for (std::size_t i = 0; i < unknown.size(); ++i) msg += (i ? ", '" : "'") + unknown[i] + "'";
    throw InputError(msg);
  }
  return WorldSet::from_bits(universe_, bits);
}

WorldSet WorldTable::parse_set(std::string_view text) const {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '{' && text.back() == '}') text = trim(text.substr(1, text.size() - 2));
  std::vector<std::string> names;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto piece = trim(text.substr(0, comma));
    if (piece.empty()) throw InputError("empty world name in set list");
    names.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
    if (trim(text).empty()) throw InputError("trailing comma in set list");
  }
  return set_of(names);
}

std::vector<std::string> WorldTable::names_of(const WorldSet& s) const {
  if (!(s.universe() == universe_)) throw DomainError("world set belongs to a different frame");
  std::vector<std::string> out;
  s.for_each([&](std::size_t i) { out.push_back(names_[i]); });
  return out;
}

std::string WorldTable::format(const WorldSet& s) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& n : names_of(s)) {
    os << (first ? "" : ", ") << n;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace cik
