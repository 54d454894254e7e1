// Copyright 2026 The Align Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The gold-mine network the teams edit: named nodes and weighted candidate
// edges. Edges are stored canonically with u < v by node id.

#ifndef ALIGN_NETWORK_H_
#define ALIGN_NETWORK_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace align {

struct Node {
  int id = 0;
  std::string name;   // "Gallen"
  std::string label;  // "Mount Gallen"
  double x = 0;
  double y = 0;
};

struct Edge {
  int u = 0;
  int v = 0;
  int cost = 0;
};

class Network {
 public:
  Network() = default;

  // Validates and canonicalizes. Throws InputError on duplicate (case
  // folded) node names, undeclared endpoints, self loops, duplicate edges,
  // non-positive costs, or a network that has no spanning tree.
  Network(std::vector<Node> nodes, std::vector<Edge> edges);

  static Network FromJson(std::string_view text);
  static Network Load(const std::filesystem::path &path);
  std::string ToJson() const;

  const std::vector<Node> &nodes() const { return nodes_; }
  const std::vector<Edge> &edges() const { return edges_; }

  // Resolves a node reference: its name or label (case-insensitive) or its
  // numeric id.
  std::optional<int> FindNode(std::string_view reference) const;

  // Node lookup by lowercase single token ("gallen").
  std::optional<int> NodeForToken(std::string_view token) const;
  bool IsNodeToken(std::string_view token) const {
    return NodeForToken(token).has_value();
  }
  // Lowercase node names, the lexicon used for entity recognition and
  // referent filtering.
  const std::set<std::string> &lexicon() const { return lexicon_; }

  const Node &node(int id) const;
  std::string TokenOf(int id) const;

  bool HasEdge(int u, int v) const;
  std::optional<int> EdgeCost(int u, int v) const;

  // Cost of a minimum spanning tree.
  int OptimalCost() const { return optimal_cost_; }

  // True for the shape of the activity network: 10 nodes, 20 edges.
  bool HasReferenceShape() const {
    return nodes_.size() == 10 && edges_.size() == 20;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::map<int, std::size_t> index_by_id_;
  std::map<std::string, int> id_by_token_;
  std::map<std::pair<int, int>, int> cost_by_edge_;
  std::set<std::string> lexicon_;
  int optimal_cost_ = 0;
};

// Total cost of a minimum spanning tree over `node_count` nodes labelled
// 0..node_count-1 (Kruskal). Returns nullopt when the graph is disconnected.
std::optional<long long> MinimumSpanningTreeCost(
    std::size_t node_count, const std::vector<Edge> &edges);

}  // namespace align

#endif  // ALIGN_NETWORK_H_
