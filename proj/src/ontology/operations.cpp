/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/ontology/operations.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ontonav/errors.hpp"

namespace ontonav::ontology {

  namespace {

    std::string_view trim(std::string_view s) {
      const auto *ws = " \t\r\n";
      auto b = s.find_first_not_of(ws);
      if (b == std::string_view::npos) {
        return {};
      }
      return s.substr(b, s.find_last_not_of(ws) - b + 1);
    }

    template <typename Fn>
    void for_each_line(std::string_view source, Fn &&fn) {
      std::size_t line_no = 0;
      std::size_t start = 0;
      while (start <= source.size()) {
        auto nl = source.find('\n', start);
        auto line = source.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                                       : nl - start);
        ++line_no;
        fn(line, line_no);
        if (nl == std::string_view::npos) {
          break;
        }
        start = nl + 1;
      }
    }

    // Taxonomy codes: letter, then numeric or "m" segments.
    bool is_ccs_code(const NodeId &id) {
      if (id.is_root()) {
        return false;
      }
      std::string_view code = id.str();
      std::size_t start = 2;
      while (start < code.size()) {
        auto dot = code.find('.', start);
        auto seg = code.substr(start, dot == std::string_view::npos ? std::string_view::npos
                                                                     : dot - start);
        bool numeric = std::all_of(seg.begin(), seg.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
        if (!(numeric || seg == "m")) {
          return false;
        }
        if (dot == std::string_view::npos) {
          break;
        }
        start = dot + 1;
      }
      return true;
    }

    std::string join(const std::vector<std::string> &parts, std::string_view sep) {
      std::string out;
      for (const auto &p : parts) {
        if (!out.empty()) {
          out += sep;
        }
        out += p;
      }
      return out;
    }

    // Next free "<prefix><n>" segment under `parent`.
    NodeId next_synthetic_child(const Ontology &ontology, const NodeId &parent,
                                char prefix) {
      unsigned highest = 0;
      for (const auto &child : ontology.children(parent)) {
        auto seg = child.last_segment();
        if (seg.size() > 1 && seg[0] == prefix) {
          unsigned n = 0;
          bool digits = true;
          for (char c : seg.substr(1)) {
            if (c < '0' || c > '9') {
              digits = false;
              break;
            }
            n = n * 10 + static_cast<unsigned>(c - '0');
          }
          if (digits) {
            highest = std::max(highest, n);
          }
        }
      }
      return parent.child(std::string(1, prefix) + std::to_string(highest + 1));
    }

    OntologyNode make_node(const NodeId &id, std::string label, NodeKind kind,
                           const text::TextPipeline &pipeline) {
      OntologyNode n;
      n.id = id;
      n.native_keywords = pipeline.keywords_in_order(label, Language::en);
      n.label = std::move(label);
      n.kind = kind;
      return n;
    }

  }  // namespace

  Ontology load_ccs(std::string_view source, const text::TextPipeline &pipeline) {
    struct Entry {
      NodeId id;
      std::string label;
      std::size_t line_no;
    };
    std::vector<Entry> entries;
    std::unordered_set<NodeId> seen;

    for_each_line(source, [&](std::string_view raw, std::size_t line_no) {
      auto line = trim(raw);
      if (line.empty() || line.front() == '#') {
        return;
      }
      auto space = line.find_first_of(" \t");
      if (space == std::string_view::npos) {
        throw MalformedLine(line_no, "expected '<code> <label>'");
      }
      auto code = line.substr(0, space);
      if (code.size() > 1 && code.back() == '.') {
        code.remove_suffix(1);
      }
      auto label = trim(line.substr(space));
      auto id = NodeId::try_parse(code);
      if (!id || !is_ccs_code(*id)) {
        throw MalformedLine(line_no, "unparsable code '" + std::string(code) + "'");
      }
      if (label.empty()) {
        throw MalformedLine(line_no, "missing label");
      }
      if (!seen.insert(*id).second) {
        throw MalformedLine(line_no, "duplicate code '" + id->str() + "'");
      }
      entries.push_back({*id, std::string(label), line_no});
    });

    if (entries.empty()) {
      throw MalformedLine(1, "document contains no taxonomy nodes");
    }
    for (const auto &e : entries) {
      auto parent = *e.id.parent();
      if (!parent.is_root() && !seen.contains(parent)) {
        throw OrphanCode(e.id.str());
      }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
      return std::count(a.id.str().begin(), a.id.str().end(), '.')
           < std::count(b.id.str().begin(), b.id.str().end(), '.');
    });

    Ontology base;
    OntologyBuilder builder(base);
    for (auto &e : entries) {
      auto kind = kind_for_label(e.label);
      builder.add_node(make_node(e.id, std::move(e.label), kind, pipeline),
                       Provenance::ccs_source);
    }
    return std::move(builder).finish();
  }

  std::vector<ImplicitDescriptor> load_descriptors(std::string_view source) {
    std::vector<ImplicitDescriptor> out;
    std::unordered_map<std::string, std::size_t> by_term;

    for_each_line(source, [&](std::string_view raw, std::size_t line_no) {
      auto line = trim(raw);
      if (line.empty() || line.front() == '#') {
        return;
      }
      auto bar = line.rfind('|');
      if (bar == std::string_view::npos) {
        throw MalformedLine(line_no, "expected '<term> | <code>[,<code>...]'");
      }
      auto term = std::string(trim(line.substr(0, bar)));
      auto codes_text = line.substr(bar + 1);
      if (term.empty()) {
        throw MalformedLine(line_no, "empty descriptor term");
      }
      std::vector<NodeId> codes;
      std::size_t start = 0;
      for (;;) {
        auto comma = codes_text.find(',', start);
        auto code = trim(codes_text.substr(start, comma == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : comma - start));
        auto id = NodeId::try_parse(code);
        if (!id || id->is_root()) {
          throw MalformedLine(line_no, "bad category code '" + std::string(code) + "'");
        }
        codes.push_back(*id);
        if (comma == std::string_view::npos) {
          break;
        }
        start = comma + 1;
      }
      auto [it, fresh] = by_term.emplace(term, out.size());
      if (fresh) {
        out.push_back({term, {}});
      }
      auto &target = out[it->second].category_codes;
      for (auto &c : codes) {
        if (std::find(target.begin(), target.end(), c) == target.end()) {
          target.push_back(std::move(c));
        }
      }
    });
    return out;
  }

  Ontology attach_descriptors(const Ontology &ontology,
                              std::span<const ImplicitDescriptor> descriptors,
                              const text::TextPipeline &pipeline) {
    std::vector<UnknownCode::Offender> offenders;
    for (const auto &d : descriptors) {
      for (const auto &code : d.category_codes) {
        const auto *n = ontology.find(code);
        if (n == nullptr || n->kind == NodeKind::descriptor_leaf || code.is_root()) {
          offenders.emplace_back(d.term, code.str());
        }
      }
    }
    if (!offenders.empty()) {
      throw UnknownCode(std::move(offenders));
    }

    OntologyBuilder builder(ontology);
    for (const auto &d : descriptors) {
      if (d.term.empty() || d.category_codes.empty()) {
        continue;
      }
      auto leaf = builder.current().descriptor_leaf(d.term);
      if (!leaf) {
        leaf = next_synthetic_child(builder.current(), d.category_codes.front(), 'd');
        builder.add_node(make_node(*leaf, d.term, NodeKind::descriptor_leaf, pipeline),
                         Provenance::ccs_source);
      }
      for (const auto &code : d.category_codes) {
        builder.add_arc({ArcKind::implicit_descriptor_of, Endpoint::node(*leaf),
                         Endpoint::node(code), Provenance::ccs_source});
      }
      for (std::size_t i = 0; i < d.category_codes.size(); ++i) {
        for (std::size_t j = i + 1; j < d.category_codes.size(); ++j) {
          builder.add_arc({ArcKind::is_related_to, Endpoint::node(d.category_codes[i]),
                           Endpoint::node(d.category_codes[j]),
                           Provenance::descriptor_cooccurrence});
        }
      }
    }
    return std::move(builder).finish();
  }

  Ontology add_keyword(const Ontology &ontology, const NodeId &node,
                       const std::string &lemma, KeywordOrigin origin) {
    ontology.node(node);
    if (lemma.empty()) {
      throw EmptyText();
    }
    OntologyBuilder builder(ontology);
    builder.add_keyword(node, lemma, origin);
    for (const auto &[id, n] : ontology.nodes()) {
      if (n.kind == NodeKind::descriptor_leaf && join(n.native_keywords, " ") == lemma) {
        builder.add_arc({ArcKind::is_related_to, Endpoint::keyword(lemma),
                         Endpoint::node(id), Provenance::folksonomy});
      }
    }
    return std::move(builder).finish();
  }

  std::vector<std::string> keyword_cluster_ordered(const Ontology &ontology,
                                                   const NodeId &node) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    auto push = [&](const std::string &lemma) {
      if (seen.insert(lemma).second) {
        out.push_back(lemma);
      }
    };
    auto take = [&](const OntologyNode &n) {
      if (!n.id.is_root()) {
        for (const auto &k : n.native_keywords) {
          push(k);
        }
      }
      for (const auto &[k, _] : n.added_keywords) {
        push(k);
      }
    };
    take(ontology.node(node));
    for (const auto &a : ontology.ancestors(node)) {
      take(ontology.node(a));
    }
    return out;
  }

  text::KeywordSet keyword_cluster(const Ontology &ontology, const NodeId &node) {
    auto ordered = keyword_cluster_ordered(ontology, node);
    return text::KeywordSet(ordered.begin(), ordered.end());
  }

  double proximity(const Ontology &ontology, const NodeId &a, const NodeId &b) {
    auto ca = keyword_cluster(ontology, a);
    auto cb = keyword_cluster(ontology, b);
    std::size_t shared = 0;
    for (const auto &k : ca) {
      shared += cb.count(k);
    }
    auto total = ca.size() + cb.size() - shared;
    return total == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(total);
  }

  Ontology add_proximity_arcs(const Ontology &ontology,
                              std::span<const CoAssignment> evidence,
                              std::size_t threshold) {
    std::map<std::string, std::set<NodeId>> per_article;
    for (const auto &e : evidence) {
      for (const auto &n : e.nodes) {
        ontology.node(n);
        per_article[e.article_id].insert(n);
      }
    }
    std::map<std::pair<NodeId, NodeId>, std::size_t> counts;
    for (const auto &[_, nodes] : per_article) {
      for (auto a = nodes.begin(); a != nodes.end(); ++a) {
        for (auto b = std::next(a); b != nodes.end(); ++b) {
          ++counts[{*a, *b}];
        }
      }
    }
    OntologyBuilder builder(ontology);
    threshold = std::max<std::size_t>(threshold, 1);
    for (const auto &[pair, count] : counts) {
      if (count >= threshold) {
        builder.add_arc({ArcKind::is_related_to, Endpoint::node(pair.first),
                         Endpoint::node(pair.second), Provenance::corpus_proximity});
      }
    }
    return std::move(builder).finish();
  }

  Subgraph focus_context(const Ontology &ontology, const NodeId &focus,
                         unsigned radius) {
    ontology.node(focus);
    std::set<NodeId> included{focus};
    std::deque<std::pair<NodeId, unsigned>> queue{{focus, 0}};
    while (!queue.empty()) {
      auto [id, hops] = queue.front();
      queue.pop_front();
      if (hops == radius) {
        continue;
      }
      std::vector<NodeId> neighbours = ontology.children(id);
      if (auto p = ontology.node(id).parent) {
        neighbours.push_back(*p);
      }
      for (auto &n : neighbours) {
        if (included.insert(n).second) {
          queue.emplace_back(std::move(n), hops + 1);
        }
      }
    }
    for (auto &a : ontology.ancestors(focus)) {
      included.insert(std::move(a));
    }

    Subgraph out;
    out.focus = focus;
    out.nodes.assign(included.begin(), included.end());
    for (const auto &arc : ontology.arcs()) {
      auto from = arc.from.node_id();
      auto to = arc.to.node_id();
      if (from && to && included.contains(*from) && included.contains(*to)) {
        out.arcs.push_back(arc);
      }
    }
    return out;
  }

  const NodeId &root_bucket_id() {
    static const NodeId id = NodeId::root().child("0");
    return id;
  }

  Ontology ensure_root_bucket(const Ontology &ontology,
                              const text::TextPipeline &pipeline) {
    if (ontology.contains(root_bucket_id())) {
      return ontology;
    }
    OntologyBuilder builder(ontology);
    builder.add_node(make_node(root_bucket_id(), "General", NodeKind::general, pipeline),
                     Provenance::ccs_source);
    return std::move(builder).finish();
  }

  BranchResult add_branch(const Ontology &ontology, const NodeId &parent,
                          const std::string &label,
                          const text::TextPipeline &pipeline) {
    const auto &p = ontology.node(parent);
    if (p.kind == NodeKind::descriptor_leaf) {
      throw std::invalid_argument("cannot grow a branch under descriptor leaf "
                                  + parent.str());
    }
    auto id = next_synthetic_child(ontology, parent, 'X');
    OntologyBuilder builder(ontology);
    builder.add_node(make_node(id, label, kind_for_label(label), pipeline),
                     Provenance::corpus_proximity);
    return {std::move(builder).finish(), id};
  }

}  // namespace ontonav::ontology
