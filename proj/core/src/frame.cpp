#include "cik/frame.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "cik/error.hpp"

namespace cik {

BasisReport validate_basis(std::span<const WorldSet> elements, const WorldSet& space) {
  BasisReport report;
  auto add = [&](BasisViolation::Kind k, std::size_t world, std::size_t a, std::size_t b) {
    report.violations.push_back({k, world, a, b});
  };

  std::unordered_map<WorldSet::Bits, std::size_t> seen;
  std::vector<bool> usable(elements.size(), true);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const WorldSet& e = elements[i];
    if (e.empty()) {
      add(BasisViolation::Kind::EmptyElement, 0, i, i);
      usable[i] = false;
      continue;
    }
    if (!e.subset_of(space)) {
      add(BasisViolation::Kind::OutsideSpace, 0, i, i);
      usable[i] = false;
      continue;
    }
    auto [it, inserted] = seen.emplace(e.bits(), i);
    if (!inserted) {
      add(BasisViolation::Kind::DuplicateElement, 0, it->second, i);
      usable[i] = false;
    }
  }

  space.for_each([&](std::size_t w) {
    std::vector<std::size_t> local;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (usable[i] && elements[i].contains(w)) local.push_back(i);
    }
    if (local.empty()) {
      add(BasisViolation::Kind::Uncovered, w, 0, 0);
      return;
    }
    for (std::size_t a = 0; a < local.size(); ++a) {
      for (std::size_t b = a + 1; b < local.size(); ++b) {
        const WorldSet meet = elements[local[a]] & elements[local[b]];
        bool refined = std::any_of(local.begin(), local.end(),
                                   [&](std::size_t c) { return elements[c].subset_of(meet); });
        if (!refined) add(BasisViolation::Kind::NotDirected, w, local[a], local[b]);
      }
    }
  });
  return report;
}

std::string describe(const BasisViolation& v, std::span<const WorldSet> elements, const WorldTable& worlds) {
  auto el = [&](std::size_t i) { return worlds.format(elements[i]); };
  std::ostringstream os;
  switch (v.kind) {
    case BasisViolation::Kind::EmptyElement:
      os << "element #" << v.first << " is empty";
      break;
    case BasisViolation::Kind::DuplicateElement:
      os << "element #" << v.second << " duplicates element #" << v.first << " " << el(v.first);
      break;
    case BasisViolation::Kind::OutsideSpace:
      os << "element #" << v.first << " " << el(v.first) << " is not inside the space";
      break;
    case BasisViolation::Kind::Uncovered:
      os << "world " << worlds.name(v.world) << " is not covered by any element";
      break;
    case BasisViolation::Kind::NotDirected:
      os << "not directed at " << worlds.name(v.world) << ": no element inside " << el(v.first) << " ∩ "
         << el(v.second);
      break;
  }
  return os.str();
}

EvidenceBasis EvidenceBasis::make(std::vector<WorldSet> elements, WorldSet space) {
  for (const auto& e : elements) {
    if (!(e.universe() == space.universe())) throw DomainError("basis element belongs to a different frame");
  }
  BasisReport report = validate_basis(elements, space);
  if (!report.valid()) {
    std::ostringstream os;
    os << "invalid evidence basis (" << report.violations.size() << " violation"
       << (report.violations.size() == 1 ? "" : "s") << ")";
    throw DomainError(os.str());
  }

  EvidenceBasis b;
  b.space_ = space;
  b.elements_ = std::move(elements);
  for (std::size_t i = 0; i < b.elements_.size(); ++i) b.lookup_.emplace(b.elements_[i].bits(), i);

  const std::size_t n = space.universe().size;
  b.evidence_.assign(n, {});
  b.minimal_.assign(n, 0);
  space.for_each([&](std::size_t w) {
    auto& local = b.evidence_[w];
    for (std::size_t i = 0; i < b.elements_.size(); ++i) {
      if (b.elements_[i].contains(w)) local.push_back(i);
    }
    // Directedness over a finite family yields a least element.
    auto least = *std::min_element(local.begin(), local.end(), [&](std::size_t x, std::size_t y) {
      return b.elements_[x].count() < b.elements_[y].count();
    });
    for (std::size_t i : local) check_invariant(b.elements_[least].subset_of(b.elements_[i]), "no least evidence");
    b.minimal_[w] = least;
  });
  return b;
}

std::optional<std::size_t> EvidenceBasis::find(const WorldSet& e) const {
  if (!(e.universe() == universe())) return std::nullopt;
  auto it = lookup_.find(e.bits());
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::size_t>& EvidenceBasis::evidence_indices(std::size_t world) const {
  if (!space_.contains(world)) throw InputError("world is not in the basis space");
  return evidence_[world];
}

std::size_t EvidenceBasis::minimal_index(std::size_t world) const {
  if (!space_.contains(world)) throw InputError("world is not in the basis space");
  return minimal_[world];
}

WorldSet EvidenceBasis::hull(const WorldSet& s) const {
  if (!s.subset_of(space_)) throw DomainError("hull argument is not inside the space");
  WorldSet out = WorldSet::empty(universe());
  s.for_each([&](std::size_t w) { out |= elements_[minimal_[w]]; });
  return out;
}

std::vector<WorldSet> evidence_at(const EvidenceBasis& basis, std::size_t world) {
  std::vector<WorldSet> out;
  for (std::size_t i : basis.evidence_indices(world)) out.push_back(basis.element(i));
  return out;
}

std::vector<WorldSet> minimal_evidence_at(const EvidenceBasis& basis, std::size_t world) {
  auto local = evidence_at(basis, world);
  std::vector<WorldSet> out;
  for (const auto& e : local) {
    bool minimal = std::none_of(local.begin(), local.end(),
                                [&](const WorldSet& o) { return o != e && o.subset_of(e); });
    if (minimal) out.push_back(e);
  }
  return out;
}

EvidenceBasis subspace_basis(const EvidenceBasis& basis, const WorldSet& e) {
  if (!basis.find(e)) throw DomainError("subspace requires a basis element");
  std::vector<WorldSet> inside;
  for (const auto& x : basis.elements()) {
    if (x.subset_of(e)) inside.push_back(x);
  }
  return EvidenceBasis::make(std::move(inside), e);
}

Topology generate_topology(const EvidenceBasis& basis) {
  Topology t(basis);
  std::unordered_set<WorldSet::Bits> opens{0};
  std::vector<WorldSet::Bits> frontier{0};
  for (const auto& e : basis.elements()) {
    std::vector<WorldSet::Bits> grown;
    for (WorldSet::Bits o : frontier) {
      WorldSet::Bits u = o | e.bits();
      if (opens.insert(u).second) grown.push_back(u);
    }
    frontier.insert(frontier.end(), grown.begin(), grown.end());
    if (frontier.size() > kMaxMaterializedOpens) throw DomainError("topology too large to materialize");
  }
  t.opens_.reserve(frontier.size());
  for (WorldSet::Bits o : frontier) t.opens_.push_back(WorldSet::from_bits(basis.universe(), o));
  std::sort(t.opens_.begin(), t.opens_.end(), [](const WorldSet& a, const WorldSet& b) {
    return a.count() != b.count() ? a.count() < b.count() : a.bits() < b.bits();
  });
  return t;
}

WorldSet open_hull(const Topology& topology, const WorldSet& s) { return topology.basis().hull(s); }

Frame Frame::make(std::shared_ptr<const WorldTable> worlds, std::vector<AgentSpec> agents) {
  if (!worlds) throw InputError("frame has no world table");
  if (agents.empty()) throw InputError("frame has no agents");
  std::unordered_set<std::string> names;
  for (const auto& a : agents) {
    if (a.name.empty()) throw InputError("agent name is empty");
    if (!names.insert(a.name).second) throw InputError("duplicate agent name '" + a.name + "'");
    if (!(a.basis.universe() == worlds->universe()) || !a.basis.space().is_full()) {
      throw DomainError("basis of agent '" + a.name + "' is not over the frame's worlds");
    }
  }
  Frame f;
  f.worlds_ = std::move(worlds);
  f.agents_ = std::move(agents);
  return f;
}

std::size_t Frame::agent_index(std::string_view name) const {
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i].name == name) return i;
  }
  throw InputError("unknown agent '" + std::string(name) + "'");
}

Frame Frame::with_tolerances(const std::vector<std::size_t>& tolerances) const {
  if (tolerances.size() != agents_.size()) throw DomainError("one tolerance per agent required");
  Frame f = *this;
  for (std::size_t i = 0; i < tolerances.size(); ++i) f.agents_[i].tolerance = tolerances[i];
  return f;
}

}  // namespace cik
