/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/ontology/ontology.hpp"

#include <algorithm>
#include <stdexcept>

#include "ontonav/errors.hpp"
#include "ontonav/text/unicode.hpp"

namespace ontonav::ontology {

  namespace {
    constexpr std::string_view kRootCode = "ROOT";
    constexpr std::string_view kKeywordPrefix = "kw:";

    bool alnum_segment(std::string_view seg) {
      return !seg.empty()
          && std::all_of(seg.begin(), seg.end(), [](char c) {
               return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z')
                   || (c >= 'A' && c <= 'Z');
             });
    }
  }  // namespace

  std::optional<NodeId> NodeId::try_parse(std::string_view code) {
    if (code.empty()) {
      return std::nullopt;
    }
    std::size_t start = 0;
    bool first = true;
    for (;;) {
      auto dot = code.find('.', start);
      auto seg = code.substr(start, dot == std::string_view::npos ? std::string_view::npos
                                                                   : dot - start);
      if (first) {
        bool letter = seg.size() == 1 && seg[0] >= 'A' && seg[0] <= 'K';
        if (!letter && seg != kRootCode) {
          return std::nullopt;
        }
        first = false;
      } else if (!alnum_segment(seg)) {
        return std::nullopt;
      }
      if (dot == std::string_view::npos) {
        break;
      }
      start = dot + 1;
    }
    return NodeId(std::string(code));
  }

  NodeId NodeId::parse(std::string_view code) {
    auto id = try_parse(code);
    if (!id) {
      throw std::invalid_argument("malformed node code '" + std::string(code) + "'");
    }
    return *id;
  }

  NodeId::NodeId() : code_(kRootCode) {}

  const NodeId &NodeId::root() {
    static const NodeId id{std::string(kRootCode)};
    return id;
  }

  bool NodeId::is_root() const noexcept {
    return code_ == kRootCode;
  }

  std::optional<NodeId> NodeId::parent() const {
    if (is_root()) {
      return std::nullopt;
    }
    auto dot = code_.rfind('.');
    if (dot == std::string::npos) {
      return root();
    }
    return NodeId(code_.substr(0, dot));
  }

  std::string_view NodeId::last_segment() const {
    auto dot = code_.rfind('.');
    return dot == std::string::npos ? std::string_view(code_)
                                    : std::string_view(code_).substr(dot + 1);
  }

  NodeId NodeId::child(std::string_view segment) const {
    if (!alnum_segment(segment)) {
      throw std::invalid_argument("bad code segment '" + std::string(segment) + "'");
    }
    if (is_root() && segment.size() == 1 && segment[0] >= 'A' && segment[0] <= 'K') {
      return NodeId(std::string(segment));
    }
    return NodeId(code_ + "." + std::string(segment));
  }

  std::string_view to_string(NodeKind kind) {
    switch (kind) {
      case NodeKind::regular: return "regular";
      case NodeKind::general: return "general";
      case NodeKind::miscellaneous: return "miscellaneous";
      case NodeKind::descriptor_leaf: return "descriptor-leaf";
    }
    return "regular";
  }

  std::string_view to_string(KeywordOrigin origin) {
    return origin == KeywordOrigin::system ? "system" : "folksonomy";
  }

  std::string_view to_string(ArcKind kind) {
    switch (kind) {
      case ArcKind::hierarchy: return "hierarchy";
      case ArcKind::implicit_descriptor_of: return "implicitDescriptorOf";
      case ArcKind::is_related_to: return "isRelatedTo";
    }
    return "hierarchy";
  }

  std::string_view to_string(Provenance provenance) {
    switch (provenance) {
      case Provenance::ccs_source: return "ccs-source";
      case Provenance::descriptor_cooccurrence: return "descriptor-cooccurrence";
      case Provenance::corpus_proximity: return "corpus-proximity";
      case Provenance::folksonomy: return "folksonomy";
    }
    return "ccs-source";
  }

  std::optional<NodeKind> parse_node_kind(std::string_view s) {
    for (auto k : {NodeKind::regular, NodeKind::general, NodeKind::miscellaneous,
                   NodeKind::descriptor_leaf}) {
      if (to_string(k) == s) {
        return k;
      }
    }
    return std::nullopt;
  }

  std::optional<KeywordOrigin> parse_keyword_origin(std::string_view s) {
    for (auto k : {KeywordOrigin::system, KeywordOrigin::folksonomy}) {
      if (to_string(k) == s) {
        return k;
      }
    }
    return std::nullopt;
  }

  std::optional<ArcKind> parse_arc_kind(std::string_view s) {
    for (auto k : {ArcKind::hierarchy, ArcKind::implicit_descriptor_of,
                   ArcKind::is_related_to}) {
      if (to_string(k) == s) {
        return k;
      }
    }
    return std::nullopt;
  }

  std::optional<Provenance> parse_provenance(std::string_view s) {
    for (auto k : {Provenance::ccs_source, Provenance::descriptor_cooccurrence,
                   Provenance::corpus_proximity, Provenance::folksonomy}) {
      if (to_string(k) == s) {
        return k;
      }
    }
    return std::nullopt;
  }

  NodeKind kind_for_label(std::string_view label) {
    auto folded = text::fold_diacritics(label);
    if (folded == "general") {
      return NodeKind::general;
    }
    if (folded == "miscellaneous") {
      return NodeKind::miscellaneous;
    }
    return NodeKind::regular;
  }

  std::optional<Endpoint> Endpoint::parse(std::string_view s) {
    if (s.substr(0, kKeywordPrefix.size()) == kKeywordPrefix) {
      auto lemma = s.substr(kKeywordPrefix.size());
      if (lemma.empty()) {
        return std::nullopt;
      }
      return Endpoint::keyword(std::string(lemma));
    }
    auto id = NodeId::try_parse(s);
    if (!id) {
      return std::nullopt;
    }
    return Endpoint::node(*id);
  }

  std::string Endpoint::str() const {
    return type == Type::node ? value : std::string(kKeywordPrefix) + value;
  }

  std::optional<NodeId> Endpoint::node_id() const {
    if (type != Type::node) {
      return std::nullopt;
    }
    return NodeId::try_parse(value);
  }

  bool ArcOrder::operator()(const SemanticArc &a, const SemanticArc &b) const {
    if (a.kind != b.kind) {
      return a.kind < b.kind;
    }
    if (auto c = a.from <=> b.from; c != 0) {
      return c < 0;
    }
    return a.to < b.to;
  }

  SemanticArc canonical(SemanticArc arc) {
    if (arc.kind == ArcKind::is_related_to && arc.to < arc.from) {
      std::swap(arc.from, arc.to);
    }
    return arc;
  }

  Ontology::Ontology() {
    OntologyNode root;
    root.id = NodeId::root();
    root.label = "computer science";
    root.native_keywords = {"computer", "science"};
    nodes_.emplace(root.id, std::move(root));
  }

  const OntologyNode &Ontology::node(const NodeId &id) const {
    if (const auto *n = find(id)) {
      return *n;
    }
    throw UnknownNode(id.str());
  }

  const OntologyNode *Ontology::find(const NodeId &id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
  }

  const std::vector<NodeId> &Ontology::children(const NodeId &id) const {
    static const std::vector<NodeId> none;
    auto it = children_.find(id);
    return it == children_.end() ? none : it->second;
  }

  std::vector<NodeId> Ontology::ancestors(const NodeId &id) const {
    std::vector<NodeId> out;
    const auto *n = &node(id);
    while (n->parent) {
      out.push_back(*n->parent);
      n = &node(*n->parent);
    }
    return out;
  }

  std::vector<NodeId> Ontology::related(const NodeId &id) const {
    std::vector<NodeId> out;
    auto self = Endpoint::node(id);
    for (const auto &arc : arcs_) {
      if (arc.kind != ArcKind::is_related_to) {
        continue;
      }
      const Endpoint *other = nullptr;
      if (arc.from == self) {
        other = &arc.to;
      } else if (arc.to == self) {
        other = &arc.from;
      }
      if (other != nullptr) {
        if (auto nid = other->node_id()) {
          out.push_back(*nid);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<NodeId> Ontology::described_nodes(const NodeId &leaf) const {
    std::vector<NodeId> out;
    auto self = Endpoint::node(leaf);
    for (const auto &arc : arcs_) {
      if (arc.kind == ArcKind::implicit_descriptor_of && arc.from == self) {
        if (auto nid = arc.to.node_id()) {
          out.push_back(*nid);
        }
      }
    }
    return out;
  }

  std::optional<NodeId> Ontology::descriptor_leaf(std::string_view term) const {
    for (const auto &[id, n] : nodes_) {
      if (n.kind == NodeKind::descriptor_leaf && n.label == term) {
        return id;
      }
    }
    return std::nullopt;
  }

  bool Ontology::operator==(const Ontology &o) const {
    return version_ == o.version_ && nodes_ == o.nodes_
        && std::equal(arcs_.begin(), arcs_.end(), o.arcs_.begin(), o.arcs_.end());
  }

  void Ontology::index_children() {
    children_.clear();
    for (const auto &[id, n] : nodes_) {
      if (n.parent) {
        children_[*n.parent].push_back(id);
      }
    }
  }

  OntologyBuilder::OntologyBuilder(Ontology base) : draft_(std::move(base)) {}

  void OntologyBuilder::add_node(OntologyNode node, Provenance provenance) {
    if (draft_.contains(node.id)) {
      throw std::logic_error("node " + node.id.str() + " already exists");
    }
    auto parent = node.id.parent();
    if (!parent) {
      throw std::logic_error("cannot add a second ROOT");
    }
    const auto &p = draft_.node(*parent);
    node.parent = *parent;
    node.depth = p.depth + 1;
    auto &siblings = draft_.children_[*parent];
    siblings.insert(std::upper_bound(siblings.begin(), siblings.end(), node.id), node.id);
    draft_.arcs_.insert(SemanticArc{ArcKind::hierarchy, Endpoint::node(*parent),
                                    Endpoint::node(node.id), provenance});
    auto id = node.id;
    draft_.nodes_.emplace(std::move(id), std::move(node));
    changed_ = true;
  }

  bool OntologyBuilder::add_arc(SemanticArc arc) {
    arc = canonical(std::move(arc));
    if (arc.kind == ArcKind::hierarchy) {
      throw std::logic_error("hierarchy arcs come from add_node");
    }
    bool inserted = draft_.arcs_.insert(std::move(arc)).second;
    changed_ = changed_ || inserted;
    return inserted;
  }

  bool OntologyBuilder::add_keyword(const NodeId &id, const std::string &lemma,
                                    KeywordOrigin origin) {
    auto it = draft_.nodes_.find(id);
    if (it == draft_.nodes_.end()) {
      throw UnknownNode(id.str());
    }
    bool inserted = it->second.added_keywords.emplace(lemma, origin).second;
    changed_ = changed_ || inserted;
    return inserted;
  }

  void OntologyBuilder::set_version(std::uint64_t version) {
    explicit_version_ = version;
  }

  Ontology OntologyBuilder::finish() && {
    if (explicit_version_) {
      draft_.version_ = *explicit_version_;
    } else if (changed_) {
      ++draft_.version_;
    }
    verify_invariants(draft_);
    return std::move(draft_);
  }

  void verify_invariants(const Ontology &ontology) {
    auto fail = [](const std::string &why) { throw std::logic_error(why); };
    const auto &nodes = ontology.nodes();
    std::size_t roots = 0;
    std::size_t hierarchy_arcs = 0;
    for (const auto &[id, n] : nodes) {
      if (!(n.id == id)) {
        fail("node keyed under the wrong id " + id.str());
      }
      if (id.is_root()) {
        ++roots;
        if (n.parent || n.depth != 0) {
          fail("ROOT must have no parent and depth 0");
        }
        continue;
      }
      if (!n.parent || !(*n.parent == *id.parent())) {
        fail("parent of " + id.str() + " does not match its code");
      }
      const auto *p = ontology.find(*n.parent);
      if (p == nullptr) {
        fail("parent of " + id.str() + " is missing");
      }
      if (p->kind == NodeKind::descriptor_leaf) {
        fail("descriptor leaf " + p->id.str() + " has children");
      }
      if (n.depth != p->depth + 1) {
        fail("depth of " + id.str() + " is inconsistent");
      }
    }
    if (roots != 1) {
      fail("exactly one ROOT expected");
    }
    for (const auto &arc : ontology.arcs()) {
      auto from = arc.from.node_id();
      auto to = arc.to.node_id();
      if (arc.from.type == Endpoint::Type::node && (!from || !ontology.contains(*from))) {
        fail("arc endpoint " + arc.from.str() + " is not a node");
      }
      if (arc.to.type == Endpoint::Type::node && (!to || !ontology.contains(*to))) {
        fail("arc endpoint " + arc.to.str() + " is not a node");
      }
      switch (arc.kind) {
        case ArcKind::hierarchy:
          ++hierarchy_arcs;
          if (!from || !to || !ontology.node(*to).parent
              || !(*ontology.node(*to).parent == *from)) {
            fail("hierarchy arc " + arc.from.str() + "->" + arc.to.str()
                 + " disagrees with parent links");
          }
          break;
        case ArcKind::implicit_descriptor_of:
          if (!from || !to
              || ontology.node(*from).kind != NodeKind::descriptor_leaf
              || ontology.node(*to).kind == NodeKind::descriptor_leaf) {
            fail("implicitDescriptorOf must go from a descriptor leaf to a category");
          }
          break;
        case ArcKind::is_related_to:
          if (arc.from == arc.to) {
            fail("isRelatedTo self-loop on " + arc.from.str());
          }
          if (arc.to < arc.from) {
            fail("isRelatedTo arc not in canonical order");
          }
          break;
      }
    }
    if (hierarchy_arcs + 1 != nodes.size()) {
      fail("hierarchy arcs do not match the node count");
    }
  }

}  // namespace ontonav::ontology
