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

#include "align/network.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "align/csv.h"
#include "align/error.h"
#include "align/tokenize.h"
#include "json.hpp"

namespace align {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

}  // namespace

std::optional<long long> MinimumSpanningTreeCost(
    std::size_t node_count, const std::vector<Edge> &edges) {
  if (node_count == 0) return 0;
  std::vector<Edge> sorted = edges;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Edge &a, const Edge &b) { return a.cost < b.cost; });
  DisjointSets sets(node_count);
  long long total = 0;
  std::size_t joined = 0;
  for (const Edge &e : sorted) {
    if (sets.Union(e.u, e.v)) {
      total += e.cost;
      ++joined;
    }
  }
  if (joined + 1 != node_count) return std::nullopt;
  return total;
}

Network::Network(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node &n = nodes_[i];
    if (!index_by_id_.emplace(n.id, i).second) {
      throw InputError("network: duplicate node id " + std::to_string(n.id));
    }
    std::string token = ToLower(n.name);
    if (token.empty()) {
      throw InputError("network: node " + std::to_string(n.id) + " has no name");
    }
    if (!id_by_token_.emplace(token, n.id).second) {
      throw InputError("network: duplicate node name '" + n.name + "'");
    }
    lexicon_.insert(token);
  }

  for (Edge e : edges) {
    if (!index_by_id_.count(e.u) || !index_by_id_.count(e.v)) {
      throw InputError("network: edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ") references an undeclared node");
    }
    if (e.u == e.v) {
      throw InputError("network: self loop on node " + std::to_string(e.u));
    }
    if (e.cost <= 0) {
      throw InputError("network: edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ") has non-positive cost");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!cost_by_edge_.emplace(std::make_pair(e.u, e.v), e.cost).second) {
      throw InputError("network: duplicate edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ")");
    }
    edges_.push_back(e);
  }

  std::vector<Edge> dense;
  dense.reserve(edges_.size());
  for (const Edge &e : edges_) {
    dense.push_back({static_cast<int>(index_by_id_.at(e.u)),
                     static_cast<int>(index_by_id_.at(e.v)), e.cost});
  }
  auto mst = MinimumSpanningTreeCost(nodes_.size(), dense);
  if (!mst) throw InputError("network: graph is not connected");
  optimal_cost_ = static_cast<int>(*mst);
}

Network Network::FromJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw InputError(std::string("network: invalid JSON: ") + e.what());
  }
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  try {
    for (const auto &n : doc.at("nodes")) {
      Node node;
      node.id = n.at("id").get<int>();
      node.name = n.at("name").get<std::string>();
      node.label = n.value("label", "Mount " + node.name);
      node.x = n.value("x", 0.0);
      node.y = n.value("y", 0.0);
      nodes.push_back(std::move(node));
    }
    for (const auto &e : doc.at("edges")) {
      edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                       e.at("cost").get<int>()});
    }
  } catch (const nlohmann::json::exception &e) {
    throw InputError(std::string("network: ") + e.what());
  }
  return Network(std::move(nodes), std::move(edges));
}

Network Network::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open network file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

std::string Network::ToJson() const {
  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const Node &n : nodes_) {
    doc["nodes"].push_back(
        {{"id", n.id}, {"name", n.name}, {"label", n.label}, {"x", n.x}, {"y", n.y}});
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge &e : edges_) {
    doc["edges"].push_back({{"u", e.u}, {"v", e.v}, {"cost", e.cost}});
  }
  return doc.dump(2) + "\n";
}

std::optional<int> Network::FindNode(std::string_view reference) const {
  std::string folded = ToLower(reference);
  if (auto it = id_by_token_.find(folded); it != id_by_token_.end()) {
    return it->second;
  }
  for (const Node &n : nodes_) {
    if (ToLower(n.label) == folded) return n.id;
  }
  if (auto id = ParseInt(reference); id && index_by_id_.count(static_cast<int>(*id))) {
    return static_cast<int>(*id);
  }
  return std::nullopt;
}

std::optional<int> Network::NodeForToken(std::string_view token) const {
  auto it = id_by_token_.find(std::string(token));
  if (it == id_by_token_.end()) return std::nullopt;
  return it->second;
}

const Node &Network::node(int id) const { return nodes_.at(index_by_id_.at(id)); }

std::string Network::TokenOf(int id) const { return ToLower(node(id).name); }

bool Network::HasEdge(int u, int v) const { return EdgeCost(u, v).has_value(); }

std::optional<int> Network::EdgeCost(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = cost_by_edge_.find({u, v});
  if (it == cost_by_edge_.end()) return std::nullopt;
  return it->second;
}

}  // namespace align
