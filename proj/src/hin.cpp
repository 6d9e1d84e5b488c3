#include "hinwalk/hin.hpp"

#include <algorithm>
#include <numeric>

namespace hinwalk {

ObjectGroup::ObjectGroup(std::string name, std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (NodeIndex i = 0; i < labels_.size(); ++i) {
    auto [it, inserted] = index_.emplace(labels_[i], i);
    if (!inserted) {
      throw Error("object group '" + name_ + "': duplicate node label '" + labels_[i] + "'");
    }
  }
}

std::optional<NodeIndex> ObjectGroup::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex ObjectGroup::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw Error("object group '" + name_ + "': unknown node label '" + std::string(label) + "'");
}

LinkGroup::LinkGroup(std::string name, std::string source_group, std::string target_group,
                     std::vector<Edge> edges, std::vector<std::uint8_t> ratings)
    : name_(std::move(name)), source_(std::move(source_group)), target_(std::move(target_group)) {
  if (!ratings.empty() && ratings.size() != edges.size()) {
    throw Error("link group '" + name_ + "': ratings not aligned with edges");
  }
  // Canonical order with stable dedup: first occurrence keeps its payload.
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (edges[a] != edges[b]) return edges[a] < edges[b];
    return a < b;
  });
  edges_.reserve(edges.size());
  if (!ratings.empty()) ratings_.reserve(edges.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Edge e = edges[order[k]];
    if (!edges_.empty() && edges_.back() == e) continue;
    edges_.push_back(e);
    if (!ratings.empty()) ratings_.push_back(ratings[order[k]]);
  }
}

std::vector<Edge> RelationView::materialize_edges() const {
  const Csr& c = csr();
  std::vector<Edge> out;
  out.reserve(c.adj.size());
  for (std::uint32_t r = 0; r < c.rows(); ++r) {
    for (NodeIndex t : c.row(r)) out.push_back({r, t});
  }
  return out;  // row-major over sorted rows: already sorted by (src, dst)
}

namespace {

Csr build_out_csr(std::span<const Edge> sorted_edges, std::uint32_t rows) {
  Csr c;
  c.offsets.assign(rows + 1, 0);
  for (const Edge& e : sorted_edges) ++c.offsets[e.src + 1];
  for (std::uint32_t r = 0; r < rows; ++r) c.offsets[r + 1] += c.offsets[r];
  c.adj.reserve(sorted_edges.size());
  for (const Edge& e : sorted_edges) c.adj.push_back(e.dst);
  return c;
}

Csr build_in_csr(std::span<const Edge> sorted_edges, std::uint32_t rows) {
  Csr c;
  c.offsets.assign(rows + 1, 0);
  for (const Edge& e : sorted_edges) ++c.offsets[e.dst + 1];
  for (std::uint32_t r = 0; r < rows; ++r) c.offsets[r + 1] += c.offsets[r];
  c.adj.assign(sorted_edges.size(), 0);
  std::vector<std::uint32_t> cursor(c.offsets.begin(), c.offsets.end() - 1);
  // Scanning in (src, dst) order keeps each target row's sources ascending.
  for (const Edge& e : sorted_edges) c.adj[cursor[e.dst]++] = e.src;
  return c;
}

Schema schema_from_links(std::span<const std::string> group_names,
                         const std::vector<std::shared_ptr<const FrozenRelation>>& rels) {
  Schema s;
  s.groups.assign(group_names.begin(), group_names.end());
  std::sort(s.groups.begin(), s.groups.end());
  for (const auto& fr : rels) {
    s.arcs.push_back({fr->link.name(), fr->link.source_group(), fr->link.target_group()});
  }
  std::sort(s.arcs.begin(), s.arcs.end());
  return s;
}

}  // namespace

Hin Hin::build(std::vector<ObjectGroup> groups, std::vector<LinkGroup> links,
               std::string dataset_id) {
  Hin hin;
  hin.dataset_ = std::move(dataset_id);
  for (auto& g : groups) {
    if (std::any_of(hin.groups_.begin(), hin.groups_.end(),
                    [&](const auto& p) { return p->name() == g.name(); })) {
      throw Error("duplicate object group name '" + g.name() + "'");
    }
    hin.groups_.push_back(std::make_shared<const ObjectGroup>(std::move(g)));
  }
  for (auto& lg : links) {
    auto find_group = [&](const std::string& n) -> const ObjectGroup* {
      for (const auto& p : hin.groups_) {
        if (p->name() == n) return p.get();
      }
      return nullptr;
    };
    const ObjectGroup* src = find_group(lg.source_group());
    const ObjectGroup* dst = find_group(lg.target_group());
    if (!src || !dst) {
      throw Error("link group '" + lg.name() + "' references unknown object group '" +
                  (src ? lg.target_group() : lg.source_group()) + "'");
    }
    if (std::any_of(hin.rels_.begin(), hin.rels_.end(),
                    [&](const auto& p) { return p->link.name() == lg.name(); })) {
      throw Error("duplicate relation name '" + lg.name() + "'");
    }
    for (const Edge& e : lg.edges()) {
      if (e.src >= src->size() || e.dst >= dst->size()) {
        throw Error("link group '" + lg.name() + "': edge endpoint out of range");
      }
    }
    FrozenRelation fr{std::move(lg), {}, {}};
    fr.out = build_out_csr(fr.link.edges(), src->size());
    fr.in = build_in_csr(fr.link.edges(), dst->size());
    hin.rels_.push_back(std::make_shared<const FrozenRelation>(std::move(fr)));
  }
  hin.reindex();
  return hin;
}

void Hin::reindex() {
  group_idx_.clear();
  rel_idx_.clear();
  group_names_.clear();
  rel_names_.clear();
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    group_idx_[groups_[i]->name()] = i;
    group_names_.push_back(groups_[i]->name());
  }
  for (std::size_t i = 0; i < rels_.size(); ++i) {
    rel_idx_[rels_[i]->link.name()] = i;
    rel_names_.push_back(rels_[i]->link.name());
  }
  schema_ = schema_from_links(group_names_, rels_);
}

bool Hin::has_group(std::string_view name) const {
  return group_idx_.count(std::string(name)) > 0;
}

bool Hin::has_relation(std::string_view name) const {
  return rel_idx_.count(std::string(name)) > 0;
}

const ObjectGroup& Hin::group(std::string_view name) const {
  auto it = group_idx_.find(std::string(name));
  if (it == group_idx_.end()) throw Error("unknown object group '" + std::string(name) + "'");
  return *groups_[it->second];
}

const LinkGroup& Hin::relation(std::string_view name) const { return frozen(name).link; }

const FrozenRelation& Hin::frozen(std::string_view name) const {
  auto it = rel_idx_.find(std::string(name));
  if (it == rel_idx_.end()) throw Error("unknown relation '" + std::string(name) + "'");
  return *rels_[it->second];
}

RelationView Hin::view(std::string_view relation, bool inverted) const {
  return RelationView{&frozen(relation), inverted};
}

Hin Hin::with_relation(LinkGroup added) const {
  if (has_relation(added.name())) {
    throw Error("relation '" + added.name() + "' already present");
  }
  Hin out = *this;
  const ObjectGroup& src = out.group(added.source_group());
  const ObjectGroup& dst = out.group(added.target_group());
  for (const Edge& e : added.edges()) {
    if (e.src >= src.size() || e.dst >= dst.size()) {
      throw Error("link group '" + added.name() + "': edge endpoint out of range");
    }
  }
  FrozenRelation fr{std::move(added), {}, {}};
  fr.out = build_out_csr(fr.link.edges(), src.size());
  fr.in = build_in_csr(fr.link.edges(), dst.size());
  out.rels_.push_back(std::make_shared<const FrozenRelation>(std::move(fr)));
  out.reindex();
  return out;
}

Hin Hin::with_replaced_relation(LinkGroup replacement) const {
  const FrozenRelation& old = frozen(replacement.name());
  if (old.link.source_group() != replacement.source_group() ||
      old.link.target_group() != replacement.target_group()) {
    throw Error("relation '" + replacement.name() + "': replacement changes endpoint groups");
  }
  Hin out = *this;
  const ObjectGroup& src = out.group(replacement.source_group());
  const ObjectGroup& dst = out.group(replacement.target_group());
  for (const Edge& e : replacement.edges()) {
    if (e.src >= src.size() || e.dst >= dst.size()) {
      throw Error("link group '" + replacement.name() + "': edge endpoint out of range");
    }
  }
  FrozenRelation fr{std::move(replacement), {}, {}};
  fr.out = build_out_csr(fr.link.edges(), src.size());
  fr.in = build_in_csr(fr.link.edges(), dst.size());
  const std::size_t slot = rel_idx_.at(fr.link.name());
  out.rels_[slot] = std::make_shared<const FrozenRelation>(std::move(fr));
  out.reindex();
  return out;
}

Hin Hin::with_dataset(std::string id) const {
  Hin out = *this;
  out.dataset_ = std::move(id);
  return out;
}

std::shared_ptr<const FrozenRelation> Hin::frozen_ptr(std::string_view name) const {
  auto it = rel_idx_.find(std::string(name));
  if (it == rel_idx_.end()) throw Error("unknown relation '" + std::string(name) + "'");
  return rels_[it->second];
}

std::shared_ptr<const ObjectGroup> Hin::group_ptr(std::string_view name) const {
  auto it = group_idx_.find(std::string(name));
  if (it == group_idx_.end()) throw Error("unknown object group '" + std::string(name) + "'");
  return groups_[it->second];
}

Schema derive_schema(const Hin& hin) {
  Schema s;
  s.groups.assign(hin.group_names().begin(), hin.group_names().end());
  std::sort(s.groups.begin(), s.groups.end());
  for (const std::string& r : hin.relation_names()) {
    const LinkGroup& lg = hin.relation(r);
    s.arcs.push_back({lg.name(), lg.source_group(), lg.target_group()});
  }
  std::sort(s.arcs.begin(), s.arcs.end());
  return s;
}

}  // namespace hinwalk
