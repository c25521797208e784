/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_ONTOLOGY_ONTOLOGY_HPP
#define ONTONAV_ONTOLOGY_ONTOLOGY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontonav/ontology/node_id.hpp"

namespace ontonav::ontology {

  enum class NodeKind { regular, general, miscellaneous, descriptor_leaf };
  enum class KeywordOrigin { system, folksonomy };
  enum class ArcKind { hierarchy, implicit_descriptor_of, is_related_to };
  enum class Provenance {
    ccs_source,
    descriptor_cooccurrence,
    corpus_proximity,
    folksonomy
  };

  std::string_view to_string(NodeKind kind);
  std::string_view to_string(KeywordOrigin origin);
  std::string_view to_string(ArcKind kind);
  std::string_view to_string(Provenance provenance);
  std::optional<NodeKind> parse_node_kind(std::string_view s);
  std::optional<KeywordOrigin> parse_keyword_origin(std::string_view s);
  std::optional<ArcKind> parse_arc_kind(std::string_view s);
  std::optional<Provenance> parse_provenance(std::string_view s);

  /// Kind implied by a taxonomy label ("General", "Miscellaneous", anything else).
  NodeKind kind_for_label(std::string_view label);

  struct OntologyNode {
    NodeId id = NodeId::root();
    std::optional<NodeId> parent;
    std::string label;
    NodeKind kind = NodeKind::regular;
    /// Lemmas of the label, in label order.
    std::vector<std::string> native_keywords;
    /// Searchable lemmas added later; never shown as the label.
    std::map<std::string, KeywordOrigin> added_keywords;
    int depth = 0;

    bool operator==(const OntologyNode &) const = default;
  };

  /// Arc endpoint: a node, or a free keyword lemma (serialized as "kw:<lemma>").
  struct Endpoint {
    enum class Type { node, keyword };

    Type type = Type::node;
    std::string value;

    static Endpoint node(const NodeId &id) {
      return {Type::node, id.str()};
    }
    static Endpoint keyword(std::string lemma) {
      return {Type::keyword, std::move(lemma)};
    }
    static std::optional<Endpoint> parse(std::string_view s);

    std::string str() const;
    std::optional<NodeId> node_id() const;

    bool operator==(const Endpoint &o) const {
      return type == o.type && value == o.value;
    }
    std::strong_ordering operator<=>(const Endpoint &o) const {
      return str() <=> o.str();
    }
  };

  struct SemanticArc {
    ArcKind kind = ArcKind::hierarchy;
    Endpoint from;
    Endpoint to;
    Provenance provenance = Provenance::ccs_source;

    bool operator==(const SemanticArc &) const = default;
  };

  /// Arc identity is (kind, from, to); provenance rides along.
  struct ArcOrder {
    bool operator()(const SemanticArc &a, const SemanticArc &b) const;
  };
  using ArcSet = std::set<SemanticArc, ArcOrder>;

  /// Descriptor-style arcs are undirected; store endpoints in canonical order.
  SemanticArc canonical(SemanticArc arc);

  class OntologyBuilder;

  /**
   * Immutable snapshot of the domain ontology.
   *
   * Hierarchy arcs form a tree under ROOT. Every mutating operation produces a
   * new value with a bumped version; an operation that changes nothing
   * returns an equal value with the same version.
   */
  class Ontology {
   public:
    /// ROOT only, version 0.
    Ontology();

    const OntologyNode &node(const NodeId &id) const;  ///< throws UnknownNode
    const OntologyNode *find(const NodeId &id) const;
    bool contains(const NodeId &id) const {
      return find(id) != nullptr;
    }

    const std::map<NodeId, OntologyNode> &nodes() const noexcept {
      return nodes_;
    }
    const ArcSet &arcs() const noexcept {
      return arcs_;
    }
    std::uint64_t version() const noexcept {
      return version_;
    }
    std::size_t size() const noexcept {
      return nodes_.size();
    }

    const std::vector<NodeId> &children(const NodeId &id) const;
    /// Nearest ancestor first, ending with ROOT.
    std::vector<NodeId> ancestors(const NodeId &id) const;

    /// Nodes linked through isRelatedTo arcs (keyword endpoints skipped).
    std::vector<NodeId> related(const NodeId &id) const;
    /// Targets of a descriptor leaf's implicitDescriptorOf arcs.
    std::vector<NodeId> described_nodes(const NodeId &leaf) const;
    /// Descriptor leaf carrying this verbatim term, if any.
    std::optional<NodeId> descriptor_leaf(std::string_view term) const;

    bool operator==(const Ontology &o) const;

   private:
    friend class OntologyBuilder;

    void index_children();

    std::map<NodeId, OntologyNode> nodes_;
    std::map<NodeId, std::vector<NodeId>> children_;
    ArcSet arcs_;
    std::uint64_t version_ = 0;
  };

  /**
   * Low-level mutation of a copied ontology. Operations use it to derive the
   * next snapshot; finish() re-checks the tree invariants.
   */
  class OntologyBuilder {
   public:
    explicit OntologyBuilder(Ontology base);

    const Ontology &current() const noexcept {
      return draft_;
    }

    /// Adds a node under its parent and the matching hierarchy arc.
    void add_node(OntologyNode node, Provenance provenance);
    /// Canonicalizes undirected arcs; false if an arc with the same identity exists.
    bool add_arc(SemanticArc arc);
    bool add_keyword(const NodeId &id, const std::string &lemma, KeywordOrigin origin);
    void set_version(std::uint64_t version);

    /// Bumps the version when anything changed (unless set explicitly).
    Ontology finish() &&;

   private:
    Ontology draft_;
    bool changed_ = false;
    std::optional<std::uint64_t> explicit_version_;
  };

  /// Throws std::logic_error naming the first broken structural invariant
  /// (tree shape, depths, arc endpoints, arc kinds).
  void verify_invariants(const Ontology &ontology);

}  // namespace ontonav::ontology

#endif  // ONTONAV_ONTOLOGY_ONTOLOGY_HPP
