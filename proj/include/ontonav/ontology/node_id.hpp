/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_ONTOLOGY_NODE_ID_HPP
#define ONTONAV_ONTOLOGY_NODE_ID_HPP

#include <compare>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace ontonav::ontology {

  /**
   * Dotted taxonomy code ("D.3.2"), or the ROOT sentinel.
   *
   * The first segment is a single letter A-K or "ROOT"; later segments are
   * alphanumeric. Dropping the last segment yields the parent code, and a bare
   * letter's parent is ROOT.
   */
  class NodeId {
   public:
    static std::optional<NodeId> try_parse(std::string_view code);
    /// Throws std::invalid_argument on a malformed code.
    static NodeId parse(std::string_view code);
    static const NodeId &root();

    const std::string &str() const noexcept {
      return code_;
    }
    bool is_root() const noexcept;
    std::optional<NodeId> parent() const;
    std::string_view last_segment() const;
    /// Appends one segment; throws std::invalid_argument if it is not alphanumeric.
    NodeId child(std::string_view segment) const;

    auto operator<=>(const NodeId &) const = default;

    /// ROOT.
    NodeId();

   private:
    explicit NodeId(std::string code) : code_(std::move(code)) {}

    std::string code_;
  };

  inline std::ostream &operator<<(std::ostream &os, const NodeId &id) {
    return os << id.str();
  }

}  // namespace ontonav::ontology

template <>
struct std::hash<ontonav::ontology::NodeId> {
  std::size_t operator()(const ontonav::ontology::NodeId &id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#endif  // ONTONAV_ONTOLOGY_NODE_ID_HPP
