#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cik/frame.hpp"

namespace cik {

inline constexpr std::size_t kDefaultLewisCap = 16;

/// Frame plus derived per-agent data: subspace bases (eager), topologies and
/// 2-open families (lazy), and a cache of Yes profiles keyed by W. All caches
/// are safe for concurrent readers.
class OperatorContext {
 public:
  explicit OperatorContext(Frame frame);
  OperatorContext(const OperatorContext&) = delete;
  OperatorContext& operator=(const OperatorContext&) = delete;

  const Frame& frame() const { return frame_; }
  std::size_t agent_count() const { return frame_.agent_count(); }
  std::size_t agent_index(std::string_view name) const { return frame_.agent_index(name); }
  WorldSet omega() const { return frame_.omega(); }

  const EvidenceBasis& basis(std::size_t agent) const { return frame_.agent(agent).basis; }
  std::size_t tolerance(std::size_t agent) const { return frame_.agent(agent).tolerance; }
  const EvidenceBasis& subspace(std::size_t agent, std::size_t element) const;

  const Topology& topology(std::size_t agent) const;
  /// Every O \ O' with O ⊇ O' open, deduplicated.
  const std::vector<WorldSet>& two_opens(std::size_t agent) const;

  /// Yes(W|E) per basis element of `agent`.
  const std::vector<bool>& yes_profile(std::size_t agent, const WorldSet& w) const;

 private:
  struct AgentCache {
    std::vector<EvidenceBasis> subspaces;
    mutable std::once_flag topology_once;
    mutable std::optional<Topology> topology;
    mutable std::once_flag two_open_once;
    mutable std::vector<WorldSet> two_opens;
    mutable std::mutex yes_mutex;
    mutable std::unordered_map<WorldSet::Bits, std::vector<bool>> yes;
  };

  Frame frame_;
  std::vector<std::unique_ptr<AgentCache>> cache_;
};

WorldSet op_R(const OperatorContext& ctx, std::size_t agent, const WorldSet& w);
WorldSet op_I(const OperatorContext& ctx, std::size_t agent, const WorldSet& w, const WorldSet& p);
WorldSet op_B(const OperatorContext& ctx, std::size_t agent, const WorldSet& w, const WorldSet& p);
WorldSet op_S(const OperatorContext& ctx, std::size_t agent, const WorldSet& p);

WorldSet op_R(const OperatorContext& ctx, std::string_view agent, const WorldSet& w);
WorldSet op_I(const OperatorContext& ctx, std::string_view agent, const WorldSet& w, const WorldSet& p);
WorldSet op_B(const OperatorContext& ctx, std::string_view agent, const WorldSet& w, const WorldSet& p);
WorldSet op_S(const OperatorContext& ctx, std::string_view agent, const WorldSet& p);

/// ⋂_i B_{i@W}(X).
WorldSet op_E_step(const OperatorContext& ctx, const WorldSet& w, const WorldSet& x);
WorldSet op_G(const OperatorContext& ctx, const WorldSet& w, const WorldSet& p);
WorldSet op_C(const OperatorContext& ctx, const WorldSet& p);

/// Throws Infeasible when the fast path does not apply and |Ω| > cap.
WorldSet op_L(const OperatorContext& ctx, const WorldSet& p, std::size_t cap = kDefaultLewisCap);

/// Least n with C(P) (n+1)-open for the agent. Throws Infeasible when C(P)
/// has infinite rank.
std::size_t n_star(const OperatorContext& ctx, std::size_t agent, const WorldSet& p);
std::size_t n_star(const OperatorContext& ctx, std::string_view agent, const WorldSet& p);

/// True when `x` is (n_i+1)-open for every agent.
bool open_for_all(const OperatorContext& ctx, const WorldSet& x);

}  // namespace cik
