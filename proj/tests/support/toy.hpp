#pragma once

// The three-group toy network used across the suites: two users liking three
// items that fall into two types.
//   likes: u1->i1, u1->i2, u2->i1, u2->i3
//   Ty:    i1->t1, i2->t1, i3->t2

#include "hinwalk/hin.hpp"

namespace testsupport {

inline hinwalk::Hin toy_hin() {
  using hinwalk::Edge;
  std::vector<hinwalk::ObjectGroup> groups;
  groups.emplace_back("user", std::vector<std::string>{"u1", "u2"});
  groups.emplace_back("item", std::vector<std::string>{"i1", "i2", "i3"});
  groups.emplace_back("type", std::vector<std::string>{"t1", "t2"});
  std::vector<hinwalk::LinkGroup> links;
  links.emplace_back("likes", "user", "item",
                     std::vector<Edge>{{0, 0}, {0, 1}, {1, 0}, {1, 2}});
  links.emplace_back("Ty", "item", "type", std::vector<Edge>{{0, 0}, {1, 0}, {2, 1}});
  return hinwalk::Hin::build(std::move(groups), std::move(links), "toy");
}

}  // namespace testsupport
