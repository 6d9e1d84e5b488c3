#include "hinwalk/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

namespace hinwalk {

namespace {

// The 19 positional genre flags of u.item, in column order.
const std::vector<std::string> kMl100kGenres = {
    "unknown",  "Action",      "Adventure", "Animation", "Children's", "Comedy",   "Crime",
    "Documentary", "Drama",    "Fantasy",   "Film-Noir", "Horror",     "Musical",  "Mystery",
    "Romance",  "Sci-Fi",      "Thriller",  "War",       "Western"};

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == delim) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

int parse_int(std::string_view s, const std::string& where) {
  int value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(where + ": expected integer, got '" + std::string(s) + "'");
  }
  return value;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path.string() + "'");
  return in;
}

// Incrementally numbered label set, ordered by first appearance.
class LabelSet {
 public:
  NodeIndex intern(const std::string& label) {
    auto [it, inserted] = index_.emplace(label, static_cast<NodeIndex>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }
  std::optional<NodeIndex> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::vector<std::string> take() { return std::move(labels_); }
  std::size_t size() const { return labels_.size(); }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
};

// Strips one trailing CR, so CRLF input parses like LF input.
bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

Hin parse_movielens_100k(const std::filesystem::path& directory) {
  const auto data_path = directory / "u.data";
  const auto item_path = directory / "u.item";
  const auto user_path = directory / "u.user";
  for (const auto& p : {data_path, item_path, user_path}) {
    if (!std::filesystem::exists(p)) {
      throw Error("ml100k: missing file '" + p.string() + "'");
    }
  }

  // u.data first: which movies are rated at all decides the movie group.
  struct RawRating {
    std::string user, item;
    std::uint8_t rating;
  };
  std::vector<RawRating> raw_ratings;
  std::unordered_map<std::string, bool> rated_movie;
  {
    auto in = open_or_throw(data_path);
    std::string line;
    std::size_t lineno = 0;
    while (read_line(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto where = "u.data:" + std::to_string(lineno);
      const auto fields = split_line(line, '\t');
      if (fields.size() != 4) {
        throw Error(where + ": expected 4 tab-separated fields");
      }
      const int rating = parse_int(fields[2], where);
      if (rating < 1 || rating > 5) {
        throw Error(where + ": rating " + std::to_string(rating) + " out of range");
      }
      raw_ratings.push_back({fields[0], fields[1], static_cast<std::uint8_t>(rating)});
      rated_movie[fields[1]] = true;
    }
  }

  // u.item: movies in file order, keeping only rated ones.
  LabelSet movies, releases, types;
  for (const auto& g : kMl100kGenres) types.intern(g);
  std::vector<Edge> ty_edges, ye_edges;
  {
    auto in = open_or_throw(item_path);
    std::string line;
    std::size_t lineno = 0;
    while (read_line(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto where = "u.item:" + std::to_string(lineno);
      const auto fields = split_line(line, '|');
      if (fields.size() < 5 + kMl100kGenres.size()) {
        throw Error(where + ": expected at least 24 pipe-separated fields");
      }
      const std::string& movie_id = fields[0];
      if (!rated_movie.count(movie_id)) continue;
      const NodeIndex m = movies.intern(movie_id);
      const std::string& date = fields[2];
      if (date.size() >= 4) {
        const std::string year = date.substr(date.size() - 4);
        ye_edges.push_back({m, releases.intern(year)});
      }
      for (std::size_t g = 0; g < kMl100kGenres.size(); ++g) {
        const std::string& flag = fields[5 + g];
        if (flag == "1") {
          ty_edges.push_back({m, static_cast<NodeIndex>(g)});
        } else if (flag != "0") {
          throw Error(where + ": genre flag must be 0 or 1");
        }
      }
    }
  }

  // u.user: users in file order plus their attribute groups.
  LabelSet users, occupations, ages, genders, locations;
  std::vector<Edge> oc_edges, ag_edges, ge_edges, lo_edges;
  {
    auto in = open_or_throw(user_path);
    std::string line;
    std::size_t lineno = 0;
    while (read_line(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto where = "u.user:" + std::to_string(lineno);
      const auto fields = split_line(line, '|');
      if (fields.size() != 5) {
        throw Error(where + ": expected 5 pipe-separated fields");
      }
      const NodeIndex u = users.intern(fields[0]);
      parse_int(fields[1], where);  // age must be numeric; label stays raw
      ag_edges.push_back({u, ages.intern(fields[1])});
      ge_edges.push_back({u, genders.intern(fields[2])});
      oc_edges.push_back({u, occupations.intern(fields[3])});
      lo_edges.push_back({u, locations.intern(fields[4])});
    }
  }

  std::vector<Edge> rates_edges;
  std::vector<std::uint8_t> rates_values;
  rates_edges.reserve(raw_ratings.size());
  rates_values.reserve(raw_ratings.size());
  for (const RawRating& r : raw_ratings) {
    const auto u = users.find(r.user);
    if (!u) throw Error("u.data: unknown user label '" + r.user + "'");
    const auto m = movies.find(r.item);
    if (!m) throw Error("u.data: unknown movie label '" + r.item + "'");
    rates_edges.push_back({*u, *m});
    rates_values.push_back(r.rating);
  }

  std::vector<ObjectGroup> groups;
  groups.emplace_back("user", users.take());
  groups.emplace_back("movie", movies.take());
  groups.emplace_back("type", types.take());
  groups.emplace_back("release", releases.take());
  groups.emplace_back("occupation", occupations.take());
  groups.emplace_back("age_group", ages.take());
  groups.emplace_back("gender", genders.take());
  groups.emplace_back("location", locations.take());

  std::vector<LinkGroup> links;
  links.emplace_back("rates", "user", "movie", std::move(rates_edges), std::move(rates_values));
  links.emplace_back("Ty", "movie", "type", std::move(ty_edges));
  links.emplace_back("Ye", "movie", "release", std::move(ye_edges));
  links.emplace_back("Oc", "user", "occupation", std::move(oc_edges));
  links.emplace_back("Ag", "user", "age_group", std::move(ag_edges));
  links.emplace_back("Ge", "user", "gender", std::move(ge_edges));
  links.emplace_back("Lo", "user", "location", std::move(lo_edges));

  return Hin::build(std::move(groups), std::move(links), "ml100k");
}

Hin derive_likes(const Hin& hin, std::string_view rating_relation, int threshold,
                 std::string_view likes_name) {
  const LinkGroup& rates = hin.relation(rating_relation);
  if (!rates.has_ratings()) {
    throw Error("relation '" + std::string(rating_relation) + "' carries no rating values");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates.ratings()[i] >= threshold) edges.push_back(rates.edges()[i]);
  }
  return hin.with_relation(LinkGroup(std::string(likes_name), rates.source_group(),
                                     rates.target_group(), std::move(edges)));
}

Hin parse_relation_tables(std::span<const RelationTableSpec> specs, std::string_view dataset_id) {
  if (specs.empty()) throw Error("no relation tables given");
  std::vector<std::string> group_order;
  std::unordered_map<std::string, LabelSet> group_labels;
  auto group_of = [&](const std::string& name) -> LabelSet& {
    auto it = group_labels.find(name);
    if (it == group_labels.end()) {
      group_order.push_back(name);
      it = group_labels.emplace(name, LabelSet{}).first;
    }
    return it->second;
  };

  struct PendingLink {
    const RelationTableSpec* spec;
    std::vector<Edge> edges;
    std::vector<std::uint8_t> ratings;
  };
  std::vector<PendingLink> pending;

  for (const RelationTableSpec& spec : specs) {
    if (spec.delimiter == '\0') throw Error("relation '" + spec.relation + "': empty delimiter");
    if (spec.source_column == spec.target_column ||
        (spec.rating_column &&
         (*spec.rating_column == spec.source_column || *spec.rating_column == spec.target_column))) {
      throw Error("relation '" + spec.relation + "': column indices must be distinct");
    }
    LabelSet& src_labels = group_of(spec.source_group);
    LabelSet& dst_labels = group_of(spec.target_group);

    PendingLink link;
    link.spec = &spec;
    auto in = open_or_throw(spec.path);
    std::string line;
    std::size_t lineno = 0;
    std::uint32_t max_col = std::max(spec.source_column, spec.target_column);
    if (spec.rating_column) max_col = std::max(max_col, *spec.rating_column);
    while (read_line(in, line)) {
      ++lineno;
      if (lineno == 1 && spec.header) continue;
      if (line.empty()) continue;
      const auto where = spec.path + ":" + std::to_string(lineno);
      const auto fields = split_line(line, spec.delimiter);
      if (fields.size() <= max_col) {
        throw Error(where + ": column index out of bounds (row has " +
                    std::to_string(fields.size()) + " fields)");
      }
      const NodeIndex s = src_labels.intern(fields[spec.source_column]);
      const NodeIndex t = dst_labels.intern(fields[spec.target_column]);
      link.edges.push_back({s, t});
      if (spec.rating_column) {
        const int rating = parse_int(fields[*spec.rating_column], where);
        if (rating < 1 || rating > 5) {
          throw Error(where + ": rating " + std::to_string(rating) + " out of range");
        }
        link.ratings.push_back(static_cast<std::uint8_t>(rating));
      }
    }
    pending.push_back(std::move(link));
  }

  std::vector<ObjectGroup> groups;
  for (const std::string& name : group_order) {
    groups.emplace_back(name, group_labels.at(name).take());
  }
  std::vector<LinkGroup> links;
  for (PendingLink& p : pending) {
    links.emplace_back(p.spec->relation, p.spec->source_group, p.spec->target_group,
                       std::move(p.edges), std::move(p.ratings));
  }
  return Hin::build(std::move(groups), std::move(links), std::string(dataset_id));
}

std::vector<RelationTableSpec> load_dataset_manifest(const std::filesystem::path& manifest_path,
                                                     std::string* dataset_id) {
  auto in = open_or_throw(manifest_path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error("manifest '" + manifest_path.string() + "': " + e.what());
  }
  if (dataset_id) *dataset_id = doc.value("dataset", "");
  if (!doc.contains("relations") || !doc["relations"].is_array()) {
    throw Error("manifest '" + manifest_path.string() + "': missing relations array");
  }
  const auto base = manifest_path.parent_path();
  std::vector<RelationTableSpec> specs;
  for (const auto& r : doc["relations"]) {
    RelationTableSpec spec;
    spec.relation = r.at("name").get<std::string>();
    spec.path = (base / r.at("path").get<std::string>()).string();
    const auto delim = r.value("delimiter", "\t");
    if (delim.empty()) throw Error("relation '" + spec.relation + "': empty delimiter");
    spec.delimiter = delim[0];
    spec.source_group = r.at("source_group").get<std::string>();
    spec.target_group = r.at("target_group").get<std::string>();
    spec.source_column = r.value("source_column", 0u);
    spec.target_column = r.value("target_column", 1u);
    if (r.contains("rating_column")) spec.rating_column = r["rating_column"].get<std::uint32_t>();
    spec.header = r.value("header", false);
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace hinwalk
