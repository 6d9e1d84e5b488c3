#include "hinwalk/meta_path.hpp"

namespace hinwalk {

MetaPath validate_meta_path(const Hin& hin, std::vector<MetaPathStep> steps) {
  if (steps.empty()) throw Error("meta-path must have at least one step");
  MetaPath path;
  std::string current;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const MetaPathStep& step = steps[k];
    RelationView v = hin.view(step.relation, step.inverted);
    if (k == 0) {
      path.source_group = v.source_group();
    } else if (v.source_group() != current) {
      throw Error("meta-path step " + std::to_string(k + 1) + " (" +
                  (step.inverted ? "~" : "") + step.relation + "): source group '" +
                  v.source_group() + "' does not compose with '" + current + "'");
    }
    current = v.target_group();
  }
  path.target_group = current;
  path.steps = std::move(steps);
  return path;
}

std::vector<MetaPathStep> parse_steps(std::string_view text) {
  std::vector<MetaPathStep> steps;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    MetaPathStep s;
    if (token.front() == '~') {
      s.inverted = true;
      s.relation = token.substr(1);
    } else {
      s.relation = token;
    }
    if (s.relation.empty()) throw Error("empty relation name in meta-path text");
    steps.push_back(std::move(s));
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == ',' ) {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return steps;
}

std::string to_string(const MetaPath& path) {
  std::string out;
  for (const MetaPathStep& s : path.steps) {
    if (!out.empty()) out += ' ';
    if (s.inverted) out += '~';
    out += s.relation;
  }
  return out;
}

}  // namespace hinwalk
