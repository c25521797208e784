/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <algorithm>
#include <stdexcept>

#include "ontonav/corpus/corpus.hpp"

namespace ontonav::corpus {

  using ontology::NodeId;
  using ontology::NodeKind;

  Classifier::Classifier(const ontology::Ontology &ontology,
                         const text::TextPipeline &pipeline)
      : ontology_(ontology), pipeline_(pipeline) {
    if (!ontology.contains(ontology::root_bucket_id())) {
      throw std::invalid_argument("classification needs the ROOT general bucket");
    }
    for (const auto &[id, node] : ontology.nodes()) {
      bool scored = !id.is_root() && node.kind == NodeKind::regular;
      entries_.push_back({id, node.kind, scored});
      for (const auto &lemma : ontology::keyword_cluster(ontology, id)) {
        by_lemma_[lemma].push_back(entries_.size() - 1);
      }
    }
  }

  std::vector<Assignment> Classifier::classify(const ArticleRecord &record) const {
    return classify_lemmas(title_lemmas(record, pipeline_));
  }

  std::vector<Assignment> Classifier::classify_lemmas(const text::KeywordSet &lemmas) const {
    std::vector<std::size_t> score(entries_.size(), 0);
    for (const auto &lemma : lemmas) {
      auto it = by_lemma_.find(lemma);
      if (it == by_lemma_.end()) {
        continue;
      }
      for (auto i : it->second) {
        ++score[i];
      }
    }

    std::size_t best = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].scored) {
        best = std::max(best, score[i]);
      }
    }
    std::vector<Assignment> out;
    if (best > 0) {
      // entries_ follows node id order, so the result is sorted
      for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].scored && score[i] == best) {
          out.push_back({entries_[i].id, AssignmentStatus::permanent});
        }
      }
      return out;
    }

    // No regular node matched: locate the closest node of any kind (first id
    // on ties) and file the record in the bucket nearest to it.
    std::optional<std::size_t> closest;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (score[i] > 0 && (!closest || score[i] > score[*closest])) {
        closest = i;
      }
    }
    NodeId home = ontology::root_bucket_id();
    if (closest) {
      const auto &e = entries_[*closest];
      auto start = e.kind == NodeKind::regular || e.id.is_root()
                     ? e.id
                     : *ontology_.node(e.id).parent;
      home = provisional_home(start);
    }
    out.push_back({home, AssignmentStatus::provisional});
    return out;
  }

  NodeId Classifier::provisional_home(const NodeId &start) const {
    std::optional<NodeId> cur = start;
    while (cur) {
      std::optional<NodeId> general;
      for (const auto &child : ontology_.children(*cur)) {
        auto kind = ontology_.node(child).kind;
        if (kind == NodeKind::miscellaneous) {
          return child;
        }
        if (kind == NodeKind::general && !general) {
          general = child;
        }
      }
      if (general) {
        return *general;
      }
      cur = ontology_.node(*cur).parent;
    }
    return ontology::root_bucket_id();
  }

  std::vector<Assignment> classify(const ArticleRecord &record,
                                   const ontology::Ontology &ontology,
                                   const text::TextPipeline &pipeline) {
    return Classifier(ontology, pipeline).classify(record);
  }

  ReclassifyResult reclassify_orphans(const PseudoCorpus &corpus,
                                      const ontology::Ontology &ontology,
                                      std::size_t min_cluster, std::size_t min_shared,
                                      const text::TextPipeline &pipeline) {
    if (min_cluster < 2 || min_shared < 2) {
      throw std::invalid_argument("orphan promotion thresholds must be at least 2");
    }
    ReclassifyResult result{ontology, corpus, {}};

    // bucket -> provisional record ids, in id order
    std::map<NodeId, std::vector<const ArticleRecord *>> buckets;
    for (const auto &[id, r] : corpus.records()) {
      for (const auto &a : r.assignments) {
        if (a.status == AssignmentStatus::provisional) {
          buckets[a.node].push_back(&r);
          break;
        }
      }
    }

    bool corpus_changed = false;
    for (const auto &[bucket, members] : buckets) {
      std::vector<text::KeywordSet> lemmas;
      lemmas.reserve(members.size());
      for (const auto *r : members) {
        lemmas.push_back(title_lemmas(*r, pipeline));
      }
      std::vector<bool> taken(members.size(), false);
      for (std::size_t seed = 0; seed < members.size(); ++seed) {
        if (taken[seed] || lemmas[seed].size() < min_shared) {
          continue;
        }
        std::vector<std::size_t> group{seed};
        auto shared = lemmas[seed];
        for (std::size_t j = seed + 1; j < members.size(); ++j) {
          if (taken[j]) {
            continue;
          }
          text::KeywordSet common;
          std::set_intersection(shared.begin(), shared.end(), lemmas[j].begin(),
                                lemmas[j].end(), std::inserter(common, common.end()));
          if (common.size() >= min_shared) {
            shared = std::move(common);
            group.push_back(j);
          }
        }
        if (group.size() < min_cluster) {
          continue;
        }

        std::string label;
        for (const auto &l : shared) {
          label += (label.empty() ? "" : " ") + l;
        }
        auto parent = *result.ontology.node(bucket).parent;
        auto branch = ontology::add_branch(result.ontology, parent, label, pipeline);
        result.ontology = std::move(branch.ontology);
        result.new_nodes.push_back(branch.id);

        for (auto i : group) {
          taken[i] = true;
          auto updated = *members[i];
          std::erase_if(updated.assignments, [&](const Assignment &a) {
            return a.status == AssignmentStatus::provisional && a.node == bucket;
          });
          updated.assignments.push_back({branch.id, AssignmentStatus::permanent});
          std::sort(updated.assignments.begin(), updated.assignments.end(),
                    [](const Assignment &a, const Assignment &b) { return a.node < b.node; });
          result.corpus.upsert(std::move(updated), pipeline);
          corpus_changed = true;
        }
      }
    }
    if (corpus_changed) {
      result.corpus.bump_version();
    }
    return result;
  }

}  // namespace ontonav::corpus
