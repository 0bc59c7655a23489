#pragma once

#include <algorithm>
#include <vector>

namespace dp::iso_detail {

// Key tags; each class key starts with one so different shapes never share an id.
enum Tag : long {
  kColour = 1,
  kPlain,
  kQueryA,
  kQueryB,
  kRecolour,
  kPair,
  kPairHole,
  kPairRoot,
  kCycle,
  kCycleHole,
  kCycleRoot,
  kRigidHole,
  kBridge,
  kCut,
  kCutHole,
  kBlockHole,
  kParentCut,
  kCutBelow,
  kCutCutoff,
  kIsolated,
};

constexpr int kParentLabel = -1;
constexpr int kHoleLabel = -2;

// Centre of the tree spanned by `nodes`; on a centre edge the end accepted by `prefer` wins.
template <typename Prefer>
int tree_centre(const std::vector<std::vector<int>>& adj, const std::vector<int>& nodes, Prefer prefer) {
  if (nodes.size() == 1) return nodes[0];
  std::vector<int> degree(adj.size(), 0);
  std::vector<char> alive(adj.size(), 0);
  for (int v : nodes) alive[static_cast<std::size_t>(v)] = 1;
  std::vector<int> layer;
  for (int v : nodes) {
    degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
    if (degree[static_cast<std::size_t>(v)] <= 1) layer.push_back(v);
  }
  std::size_t remaining = nodes.size();
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      alive[static_cast<std::size_t>(v)] = 0;
      --remaining;
      for (int w : adj[static_cast<std::size_t>(v)])
        if (alive[static_cast<std::size_t>(w)] && --degree[static_cast<std::size_t>(w)] == 1) next.push_back(w);
    }
    layer = std::move(next);
  }
  std::vector<int> left;
  for (int v : nodes)
    if (alive[static_cast<std::size_t>(v)]) left.push_back(v);
  if (left.size() == 1) return left[0];
  return prefer(left[0]) ? left[0] : left[1];
}

}  // namespace dp::iso_detail
