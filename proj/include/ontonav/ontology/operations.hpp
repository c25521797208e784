/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_ONTOLOGY_OPERATIONS_HPP
#define ONTONAV_ONTOLOGY_OPERATIONS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontonav/ontology/ontology.hpp"
#include "ontonav/text/pipeline.hpp"

namespace ontonav::ontology {

  /// Label of the synthetic root placed above the lettered top level.
  inline constexpr std::string_view kRootLabel = "computer science";

  /// "Proper noun" subject descriptor with the codes it is filed under.
  struct ImplicitDescriptor {
    std::string term;
    std::vector<NodeId> category_codes;

    bool operator==(const ImplicitDescriptor &) const = default;
  };

  /// Node assignments of one article, used as co-indexing evidence.
  struct CoAssignment {
    std::string article_id;
    std::vector<NodeId> nodes;
  };

  struct Subgraph {
    NodeId focus = NodeId::root();
    std::vector<NodeId> nodes;  ///< sorted
    std::vector<SemanticArc> arcs;
  };

  /**
   * Parses the flat taxonomy text (`<code> <label>` per line) into a tree
   * under a synthetic ROOT. Blank lines and `#` comment lines are ignored; a
   * trailing '.' on the code is accepted ("A. GENERAL LITERATURE").
   *
   * Throws MalformedLine for unparsable or duplicate codes (and for a document
   * without any node, reported at line 1) and OrphanCode when a parent code is
   * missing.
   */
  Ontology load_ccs(std::string_view source, const text::TextPipeline &pipeline);

  /// `<term> | <code>[, <code>...]` per line; repeated terms are merged.
  std::vector<ImplicitDescriptor> load_descriptors(std::string_view source);

  /**
   * Hangs one descriptor leaf per term under its first category, links it to
   * every category with implicitDescriptorOf, and relates every pair of
   * categories sharing the descriptor. All-or-nothing: throws UnknownCode
   * listing every unresolved reference.
   */
  Ontology attach_descriptors(const Ontology &ontology,
                              std::span<const ImplicitDescriptor> descriptors,
                              const text::TextPipeline &pipeline);

  /// Adds a searchable lemma. A lemma equal to a descriptor term's lemma also
  /// gets an isRelatedTo arc to that descriptor leaf.
  Ontology add_keyword(const Ontology &ontology, const NodeId &node,
                       const std::string &lemma, KeywordOrigin origin);

  /// Node-native lemmas, then added ones, then inherited ones (nearest
  /// ancestor first). ROOT's own label is excluded.
  std::vector<std::string> keyword_cluster_ordered(const Ontology &ontology,
                                                   const NodeId &node);
  text::KeywordSet keyword_cluster(const Ontology &ontology, const NodeId &node);

  /// Jaccard coefficient of the two keyword clusters (0 when both are empty).
  double proximity(const Ontology &ontology, const NodeId &a, const NodeId &b);

  /// Relates every node pair co-assigned to at least `threshold` distinct articles.
  Ontology add_proximity_arcs(const Ontology &ontology,
                              std::span<const CoAssignment> evidence,
                              std::size_t threshold);

  /// Focus, every node within `radius` hierarchy hops, the path to ROOT, and
  /// the arcs whose endpoints are all included.
  Subgraph focus_context(const Ontology &ontology, const NodeId &focus,
                         unsigned radius);

  /// Id of ROOT's general bucket, the last-resort home of orphan articles.
  const NodeId &root_bucket_id();

  /// Adds ROOT's "General" bucket if it does not exist yet.
  Ontology ensure_root_bucket(const Ontology &ontology,
                              const text::TextPipeline &pipeline);

  struct BranchResult {
    Ontology ontology;
    NodeId id;
  };

  /// Adds a promoted branch `<parent>.X<n>` labelled `label`.
  BranchResult add_branch(const Ontology &ontology, const NodeId &parent,
                          const std::string &label,
                          const text::TextPipeline &pipeline);

}  // namespace ontonav::ontology

#endif  // ONTONAV_ONTOLOGY_OPERATIONS_HPP
