#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hinwalk/error.hpp"

namespace hinwalk {

using NodeIndex = std::uint32_t;

/// One directed edge between dense node indices of two object groups.
struct Edge {
  NodeIndex src = 0;
  NodeIndex dst = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// All nodes sharing one node label. Nodes are dense indices 0..size()-1
/// with a bijective mapping to external string labels.
class ObjectGroup {
 public:
  ObjectGroup(std::string name, std::vector<std::string> labels);

  const std::string& name() const { return name_; }
  NodeIndex size() const { return static_cast<NodeIndex>(labels_.size()); }
  const std::string& label(NodeIndex i) const { return labels_.at(i); }
  std::span<const std::string> labels() const { return labels_; }
  std::optional<NodeIndex> find(std::string_view label) const;
  /// Throws Error on unknown label.
  NodeIndex index_of(std::string_view label) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
};

/// Compressed adjacency. offsets has rows+1 entries; adj[offsets[r],
/// offsets[r+1]) lists row r's neighbors in ascending order.
struct Csr {
  std::vector<std::uint32_t> offsets;
  std::vector<NodeIndex> adj;

  std::uint32_t rows() const { return static_cast<std::uint32_t>(offsets.size() - 1); }
  std::span<const NodeIndex> row(std::uint32_t r) const {
    return {adj.data() + offsets[r], adj.data() + offsets[r + 1]};
  }
  std::uint32_t degree(std::uint32_t r) const { return offsets[r + 1] - offsets[r]; }
};

/// One named relation: a simple directed edge set between a source and a
/// target object group. Edges are kept canonically sorted by (src, dst);
/// duplicate pairs from raw input are dropped, first occurrence wins for any
/// per-edge payload. Ratings, when present, are aligned with edges().
class LinkGroup {
 public:
  LinkGroup(std::string name, std::string source_group, std::string target_group,
            std::vector<Edge> edges, std::vector<std::uint8_t> ratings = {});

  const std::string& name() const { return name_; }
  const std::string& source_group() const { return source_; }
  const std::string& target_group() const { return target_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool has_ratings() const { return !ratings_.empty(); }
  std::span<const std::uint8_t> ratings() const { return ratings_; }

 private:
  std::string name_;
  std::string source_;
  std::string target_;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> ratings_;
};

struct SchemaArc {
  std::string relation;
  std::string source;
  std::string target;
  friend auto operator<=>(const SchemaArc&, const SchemaArc&) = default;
};

/// Group-level summary graph: the object group names plus one arc per relation.
struct Schema {
  std::vector<std::string> groups;  // sorted
  std::vector<SchemaArc> arcs;      // sorted by relation name
  friend bool operator==(const Schema&, const Schema&) = default;
};

/// A relation frozen into a Hin: the edge set plus both adjacency directions.
struct FrozenRelation {
  LinkGroup link;
  Csr out;  // source index -> target indices
  Csr in;   // target index -> source indices
};

/// Directed face of a frozen relation, forward or inverted. Inversion is a
/// view over the precomputed reverse adjacency; nothing is copied.
struct RelationView {
  const FrozenRelation* rel = nullptr;
  bool inverted = false;

  const std::string& relation() const { return rel->link.name(); }
  const std::string& source_group() const {
    return inverted ? rel->link.target_group() : rel->link.source_group();
  }
  const std::string& target_group() const {
    return inverted ? rel->link.source_group() : rel->link.target_group();
  }
  const Csr& csr() const { return inverted ? rel->in : rel->out; }
  std::size_t edge_count() const { return rel->link.size(); }
  /// Edge set of this face, sorted by (src, dst). For tests and serialization.
  std::vector<Edge> materialize_edges() const;
};

/// Immutable typed multigraph: object groups, link groups, schema. build()
/// freezes everything; with_* derivations share every unchanged part, so
/// experiment replicates never copy the bulk of a network.
class Hin {
 public:
  static Hin build(std::vector<ObjectGroup> groups, std::vector<LinkGroup> links,
                   std::string dataset_id = {});

  const std::string& dataset() const { return dataset_; }
  std::span<const std::string> group_names() const { return group_names_; }
  std::span<const std::string> relation_names() const { return rel_names_; }
  bool has_group(std::string_view name) const;
  bool has_relation(std::string_view name) const;
  const ObjectGroup& group(std::string_view name) const;
  const LinkGroup& relation(std::string_view name) const;
  const FrozenRelation& frozen(std::string_view name) const;
  RelationView view(std::string_view relation, bool inverted = false) const;
  const Schema& schema() const { return schema_; }

  Hin with_relation(LinkGroup added) const;
  Hin with_replaced_relation(LinkGroup replacement) const;
  Hin with_dataset(std::string id) const;

  /// Shared-structure identity, for cheap derivation checks.
  std::shared_ptr<const FrozenRelation> frozen_ptr(std::string_view name) const;
  std::shared_ptr<const ObjectGroup> group_ptr(std::string_view name) const;

 private:
  Hin() = default;
  void reindex();

  std::vector<std::shared_ptr<const ObjectGroup>> groups_;
  std::vector<std::shared_ptr<const FrozenRelation>> rels_;
  std::unordered_map<std::string, std::size_t> group_idx_;
  std::unordered_map<std::string, std::size_t> rel_idx_;
  std::vector<std::string> group_names_;
  std::vector<std::string> rel_names_;
  Schema schema_;
  std::string dataset_;
};

/// Rebuilds the schema from the link groups alone.
Schema derive_schema(const Hin& hin);

}  // namespace hinwalk
