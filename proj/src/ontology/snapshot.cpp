/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/ontology/snapshot.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "ontonav/errors.hpp"
#include "ontonav/xml/pull_parser.hpp"

namespace ontonav::ontology {

  namespace {

    constexpr std::string_view kNativeOrigin = "native";

    template <typename T>
    std::optional<T> parse_number(std::string_view s) {
      T value{};
      auto res = std::from_chars(s.data(), s.data() + s.size(), value);
      if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        return std::nullopt;
      }
      return value;
    }

    struct RawNode {
      OntologyNode node;
      std::string path;
    };

    struct RawArc {
      SemanticArc arc;
      std::string path;
    };

    class SnapshotReader {
     public:
      explicit SnapshotReader(std::string_view doc) : stream_(std::string(doc)), parser_(stream_) {}

      Ontology read() {
        const xml::Event *ev = &next_structural();
        if (ev->type != xml::EventType::start_element || ev->name != "ontology") {
          throw SchemaViolation("/", "root element must be <ontology>");
        }
        const auto *version_attr = ev->attribute("version");
        if (version_attr == nullptr) {
          throw SchemaViolation("/ontology/@version", "missing");
        }
        auto version = parse_number<std::uint64_t>(*version_attr);
        if (!version) {
          throw SchemaViolation("/ontology/@version", "not a number");
        }
        check_attributes(*ev, {"version"}, "/ontology");

        for (;;) {
          ev = &next_structural();
          if (ev->type == xml::EventType::end_element) {
            break;
          }
          if (ev->type != xml::EventType::start_element) {
            throw SchemaViolation("/ontology", "unexpected content");
          }
          if (ev->name == "node") {
            read_node(*ev);
          } else if (ev->name == "arc") {
            read_arc(*ev);
          } else {
            throw SchemaViolation("/ontology/" + ev->name, "unknown element");
          }
        }
        if (next_structural().type != xml::EventType::end_document) {
          throw SchemaViolation("/", "trailing content");
        }
        return assemble(*version);
      }

     private:
      const xml::Event &next_structural() {
        for (;;) {
          const auto &ev = parser_.next();
          if (ev.type == xml::EventType::text
              && ev.text.find_first_not_of(" \t\r\n") == std::string::npos) {
            continue;
          }
          return ev;
        }
      }

      static void check_attributes(const xml::Event &ev,
                                   std::initializer_list<std::string_view> allowed,
                                   const std::string &path) {
        for (const auto &[key, _] : ev.attributes) {
          bool known = false;
          for (auto a : allowed) {
            known = known || a == key;
          }
          if (!known) {
            throw SchemaViolation(path + "/@" + key, "unknown attribute");
          }
        }
      }

      static const std::string &required(const xml::Event &ev, std::string_view key,
                                         const std::string &path) {
        const auto *v = ev.attribute(key);
        if (v == nullptr) {
          throw SchemaViolation(path + "/@" + std::string(key), "missing");
        }
        return *v;
      }

      std::string read_text_element(const std::string &path) {
        std::string text;
        for (;;) {
          const auto &ev = parser_.next();
          if (ev.type == xml::EventType::text) {
            text += ev.text;
          } else if (ev.type == xml::EventType::end_element) {
            return text;
          } else {
            throw SchemaViolation(path, "expected text only");
          }
        }
      }

      void read_node(const xml::Event &start) {
        auto path = "/ontology/node[" + std::to_string(++node_count_) + "]";
        check_attributes(start, {"id", "kind", "depth"}, path);
        RawNode raw;
        raw.path = path;
        auto id = NodeId::try_parse(required(start, "id", path));
        if (!id) {
          throw SchemaViolation(path + "/@id", "malformed node id");
        }
        auto kind = parse_node_kind(required(start, "kind", path));
        if (!kind) {
          throw SchemaViolation(path + "/@kind", "unknown node kind");
        }
        auto depth = parse_number<int>(required(start, "depth", path));
        if (!depth || *depth < 0) {
          throw SchemaViolation(path + "/@depth", "not a non-negative integer");
        }
        raw.node.id = *id;
        raw.node.kind = *kind;
        raw.node.depth = *depth;

        bool has_label = false;
        std::size_t keyword_count = 0;
        for (;;) {
          const auto &ev = next_structural();
          if (ev.type == xml::EventType::end_element) {
            break;
          }
          if (ev.type != xml::EventType::start_element) {
            throw SchemaViolation(path, "unexpected text");
          }
          if (ev.name == "label") {
            if (has_label) {
              throw SchemaViolation(path + "/label[2]", "duplicate label");
            }
            check_attributes(ev, {}, path + "/label");
            has_label = true;
            raw.node.label = read_text_element(path + "/label");
          } else if (ev.name == "keyword") {
            auto kpath = path + "/keyword[" + std::to_string(++keyword_count) + "]";
            check_attributes(ev, {"origin"}, kpath);
            auto origin = required(ev, "origin", kpath);
            auto lemma = read_text_element(kpath);
            if (lemma.empty()) {
              throw SchemaViolation(kpath, "empty keyword");
            }
            if (origin == kNativeOrigin) {
              raw.node.native_keywords.push_back(std::move(lemma));
            } else if (auto o = parse_keyword_origin(origin)) {
              raw.node.added_keywords.emplace(std::move(lemma), *o);
            } else {
              throw SchemaViolation(kpath + "/@origin", "unknown origin");
            }
          } else {
            throw SchemaViolation(path + "/" + ev.name, "unknown element");
          }
        }
        if (!has_label) {
          throw SchemaViolation(path + "/label", "missing");
        }
        nodes_.push_back(std::move(raw));
      }

      void read_arc(const xml::Event &start) {
        auto path = "/ontology/arc[" + std::to_string(++arc_count_) + "]";
        check_attributes(start, {"from", "to", "kind", "provenance"}, path);
        RawArc raw;
        raw.path = path;
        auto from = Endpoint::parse(required(start, "from", path));
        if (!from) {
          throw SchemaViolation(path + "/@from", "malformed endpoint");
        }
        auto to = Endpoint::parse(required(start, "to", path));
        if (!to) {
          throw SchemaViolation(path + "/@to", "malformed endpoint");
        }
        auto kind = parse_arc_kind(required(start, "kind", path));
        if (!kind) {
          throw SchemaViolation(path + "/@kind", "unknown arc kind");
        }
        auto prov = parse_provenance(required(start, "provenance", path));
        if (!prov) {
          throw SchemaViolation(path + "/@provenance", "unknown provenance");
        }
        raw.arc = {*kind, *from, *to, *prov};
        const auto &end = next_structural();
        if (end.type != xml::EventType::end_element) {
          throw SchemaViolation(path, "arc elements must be empty");
        }
        arcs_.push_back(std::move(raw));
      }

      Ontology assemble(std::uint64_t version) {
        std::map<NodeId, const RawNode *> by_id;
        for (const auto &raw : nodes_) {
          if (!by_id.emplace(raw.node.id, &raw).second) {
            throw SchemaViolation(raw.path + "/@id", "duplicate node id");
          }
        }
        auto root_it = by_id.find(NodeId::root());
        if (root_it == by_id.end()) {
          throw SchemaViolation("/ontology", "no ROOT node");
        }

        std::map<NodeId, const RawArc *> parent_arc;
        for (const auto &raw : arcs_) {
          for (const auto *end : {&raw.arc.from, &raw.arc.to}) {
            auto id = end->node_id();
            if (id && !by_id.contains(*id)) {
              throw SchemaViolation(raw.path + (end == &raw.arc.from ? "/@from" : "/@to"),
                                    "references missing node " + id->str());
            }
          }
          if (raw.arc.kind == ArcKind::hierarchy) {
            auto child = raw.arc.to.node_id();
            if (!child || !raw.arc.from.node_id()) {
              throw SchemaViolation(raw.path, "hierarchy arcs join two nodes");
            }
            if (!parent_arc.emplace(*child, &raw).second) {
              throw SchemaViolation(raw.path, "node " + child->str() + " has two parents");
            }
          }
        }

        Ontology base;
        OntologyBuilder builder(base);
        // Parents before children: ids sort by code, and a parent's code is a
        // prefix of its child's, but "ROOT.0" needs ROOT first, so go by depth.
        std::vector<const RawNode *> order;
        for (const auto &[_, raw] : by_id) {
          if (!raw->node.id.is_root()) {
            order.push_back(raw);
          }
        }
        std::stable_sort(order.begin(), order.end(), [](const RawNode *a, const RawNode *b) {
          return a->node.depth < b->node.depth;
        });

        const auto &root_raw = *root_it->second;
        if (root_raw.node.depth != 0) {
          throw SchemaViolation(root_raw.path + "/@depth", "ROOT depth must be 0");
        }
        if (parent_arc.contains(NodeId::root())) {
          throw SchemaViolation(parent_arc.at(NodeId::root())->path, "ROOT has a parent");
        }

        for (const auto *raw : order) {
          auto it = parent_arc.find(raw->node.id);
          if (it == parent_arc.end()) {
            throw SchemaViolation(raw->path, "node has no hierarchy parent");
          }
          auto declared_parent = *it->second->arc.from.node_id();
          if (!(declared_parent == *raw->node.id.parent())) {
            throw SchemaViolation(it->second->path, "parent does not match the child's code");
          }
          const auto *parent = builder.current().find(declared_parent);
          if (parent == nullptr) {
            throw SchemaViolation(it->second->path, "parent appears deeper than its child");
          }
          if (parent->depth + 1 != raw->node.depth) {
            throw SchemaViolation(raw->path + "/@depth", "inconsistent depth");
          }
          if (parent->kind == NodeKind::descriptor_leaf) {
            throw SchemaViolation(raw->path, "descriptor leaves cannot have children");
          }
          builder.add_node(raw->node, it->second->arc.provenance);
        }

        for (const auto &raw : arcs_) {
          if (raw.arc.kind == ArcKind::hierarchy) {
            continue;
          }
          const auto &arc = raw.arc;
          if (arc.kind == ArcKind::is_related_to) {
            if (arc.from == arc.to) {
              throw SchemaViolation(raw.path, "self-loop");
            }
            if (arc.to < arc.from) {
              throw SchemaViolation(raw.path, "isRelatedTo endpoints not canonical");
            }
          } else {
            auto from = arc.from.node_id();
            auto to = arc.to.node_id();
            if (!from || !to
                || builder.current().node(*from).kind != NodeKind::descriptor_leaf
                || builder.current().node(*to).kind == NodeKind::descriptor_leaf) {
              throw SchemaViolation(raw.path,
                                    "implicitDescriptorOf must link a descriptor leaf to a category");
            }
          }
          if (!builder.add_arc(arc)) {
            throw SchemaViolation(raw.path, "duplicate arc");
          }
        }

        const auto &root = root_raw.node;
        const auto &expected = base.node(NodeId::root());
        if (root.label != expected.label || root.kind != expected.kind
            || root.native_keywords != expected.native_keywords) {
          throw SchemaViolation(root_raw.path, "ROOT content differs from the synthetic root");
        }
        for (const auto &[lemma, origin] : root.added_keywords) {
          builder.add_keyword(NodeId::root(), lemma, origin);
        }
        builder.set_version(version);
        return std::move(builder).finish();
      }

      std::istringstream stream_;
      xml::PullParser parser_;
      std::vector<RawNode> nodes_;
      std::vector<RawArc> arcs_;
      std::size_t node_count_ = 0;
      std::size_t arc_count_ = 0;
    };

  }  // namespace

  std::string export_snapshot(const Ontology &ontology) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<ontology version=\"" + std::to_string(ontology.version()) + "\">\n";
    for (const auto &[id, n] : ontology.nodes()) {
      out += "  <node id=\"" + xml::escape(id.str(), true) + "\" kind=\""
           + std::string(to_string(n.kind)) + "\" depth=\"" + std::to_string(n.depth)
           + "\">\n";
      out += "    <label>" + xml::escape(n.label) + "</label>\n";
      for (const auto &k : n.native_keywords) {
        out += "    <keyword origin=\"native\">" + xml::escape(k) + "</keyword>\n";
      }
      for (const auto &[k, origin] : n.added_keywords) {
        out += "    <keyword origin=\"" + std::string(to_string(origin)) + "\">"
             + xml::escape(k) + "</keyword>\n";
      }
      out += "  </node>\n";
    }
    for (const auto &arc : ontology.arcs()) {
      out += "  <arc from=\"" + xml::escape(arc.from.str(), true) + "\" to=\""
           + xml::escape(arc.to.str(), true) + "\" kind=\""
           + std::string(to_string(arc.kind)) + "\" provenance=\""
           + std::string(to_string(arc.provenance)) + "\"/>\n";
    }
    out += "</ontology>\n";
    return out;
  }

  Ontology import_snapshot(std::string_view document) {
    try {
      return SnapshotReader(document).read();
    } catch (const XmlSyntax &e) {
      throw SchemaViolation("/", e.what());
    } catch (const std::logic_error &e) {
      throw SchemaViolation("/ontology", e.what());
    }
  }

}  // namespace ontonav::ontology
