// Copyright 2026 The setsyl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// Canonical hereditarily finite sets.
///
/// An HFSet is an immutable value whose members are kept sorted in the
/// canonical total order (rank, then cardinality, then lexicographic on the
/// member sequences) without duplicates, so structural equality coincides with
/// set equality. Small sets (rank <= 4) also have an Ackermann code,
/// code(s) = sum over members m of 2^code(m), used by the bounded oracle.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "setsyl/error.hpp"

namespace setsyl {

class HFSet {
 public:
  /// The empty set.
  HFSet() : node_(empty_node()) {}

  /// Canonical set with the given members (any order, duplicates allowed).
  static HFSet of(std::vector<HFSet> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return from_sorted(std::move(members));
  }

  static HFSet singleton(HFSet member) { return from_sorted({std::move(member)}); }

  std::span<const HFSet> members() const { return node_->members; }
  std::size_t size() const { return node_->members.size(); }
  bool empty() const { return node_->members.empty(); }
  std::size_t rank() const { return node_->rank; }
  std::size_t hash() const { return node_->hash; }

  bool contains(const HFSet& x) const {
    return std::binary_search(node_->members.begin(), node_->members.end(), x);
  }

  bool is_subset_of(const HFSet& other) const {
    return std::includes(other.node_->members.begin(), other.node_->members.end(),
                         node_->members.begin(), node_->members.end());
  }

  friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.rank() <=> b.rank(); c != 0) return c;
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    const auto& am = a.node_->members;
    const auto& bm = b.node_->members;
    for (std::size_t i = 0; i < am.size(); ++i) {
      if (auto c = am[i] <=> bm[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  friend bool operator==(const HFSet& a, const HFSet& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.rank() != b.rank() || a.size() != b.size()) return false;
    return (a <=> b) == 0;
  }

  /// Ackermann code when it fits in 32 bits (always the case for rank <= 4).
  std::optional<std::uint32_t> code() const { return node_->code; }

  /// Inverse of code(): the set whose Ackermann code is `c`.
  static HFSet from_code(std::uint32_t c) {
    std::vector<HFSet> members;
    for (std::uint32_t bit = 0; bit < 32; ++bit)
      if ((c >> bit) & 1u) members.push_back(from_code(bit));
    return from_sorted_or_sort(std::move(members));
  }

 private:
  struct Node {
    std::vector<HFSet> members;
    std::size_t rank = 0;
    std::size_t hash = 0;
    std::optional<std::uint32_t> code;
  };

  static std::shared_ptr<const Node> empty_node() {
    static const std::shared_ptr<const Node> e = [] {
      auto n = std::make_shared<Node>();
      n->hash = 0x9e3779b97f4a7c15ull;
      n->code = 0;
      return n;
    }();
    return e;
  }

  static HFSet from_sorted_or_sort(std::vector<HFSet> members) {
    std::sort(members.begin(), members.end());
    return from_sorted(std::move(members));
  }

  static HFSet from_sorted(std::vector<HFSet> members) {
    if (members.empty()) return HFSet();
    auto n = std::make_shared<Node>();
    std::size_t h = 0xcbf29ce484222325ull ^ members.size();
    std::size_t r = 0;
    std::uint64_t code = 0;
    bool code_ok = true;
    for (const auto& m : members) {
      r = std::max(r, m.rank() + 1);
      h = (h ^ m.hash()) * 0x100000001b3ull;
      h ^= h >> 29;
      if (code_ok && m.node_->code && *m.node_->code < 32) {
        code |= std::uint64_t{1} << *m.node_->code;
      } else {
        code_ok = false;
      }
    }
    n->members = std::move(members);
    n->rank = r;
    n->hash = h;
    if (code_ok) n->code = static_cast<std::uint32_t>(code);
    HFSet s;
    s.node_ = std::move(n);
    return s;
  }

  std::shared_ptr<const Node> node_;

  friend HFSet set_union(const HFSet&, const HFSet&);
  friend HFSet set_intersection(const HFSet&, const HFSet&);
  friend HFSet set_difference(const HFSet&, const HFSet&);
};

inline HFSet set_union(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                 std::back_inserter(out));
  return HFSet::from_sorted(std::move(out));
}

inline HFSet set_intersection(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(out));
  return HFSet::from_sorted(std::move(out));
}

inline HFSet set_difference(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> out;
  std::set_difference(a.members().begin(), a.members().end(), b.members().begin(),
                      b.members().end(), std::back_inserter(out));
  return HFSet::from_sorted(std::move(out));
}

/// Canonical constructor: members deduplicated and sorted.
inline HFSet hf(std::vector<HFSet> members) { return HFSet::of(std::move(members)); }

/// {∅}^depth: the depth-fold singleton of the empty set; rank = depth.
inline HFSet nested_singleton(std::size_t depth) {
  HFSet s;
  for (std::size_t i = 0; i < depth; ++i) s = HFSet::singleton(s);
  return s;
}

/// Braces notation: "{}" for the empty set, "{{},{{}}}" for {∅,{∅}}.
inline void print_braces(std::string& out, const HFSet& s) {
  out += '{';
  bool first = true;
  for (const auto& m : s.members()) {
    if (!first) out += ',';
    first = false;
    print_braces(out, m);
  }
  out += '}';
}

inline std::string to_braces(const HFSet& s) {
  std::string out;
  print_braces(out, s);
  return out;
}

namespace detail {

inline HFSet parse_braces_at(std::string_view text, std::size_t& pos) {
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n')) ++pos;
  };
  skip();
  if (pos >= text.size() || text[pos] != '{')
    throw Error("malformed set literal at offset " + std::to_string(pos) + ": expected '{'");
  ++pos;
  std::vector<HFSet> members;
  skip();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
    return HFSet();
  }
  while (true) {
    members.push_back(parse_braces_at(text, pos));
    skip();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
      break;
    }
    throw Error("malformed set literal at offset " + std::to_string(pos) + ": expected ',' or '}'");
  }
  return HFSet::of(std::move(members));
}

}  // namespace detail

/// Parses braces notation; members may be listed in any order.
inline HFSet parse_braces(std::string_view text) {
  std::size_t pos = 0;
  HFSet s = detail::parse_braces_at(text, pos);
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\n')) ++pos;
  if (pos != text.size()) throw Error("trailing characters after set literal");
  return s;
}

}  // namespace setsyl

template <>
struct std::hash<setsyl::HFSet> {
  std::size_t operator()(const setsyl::HFSet& s) const noexcept { return s.hash(); }
};
