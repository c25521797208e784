/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_ONTOLOGY_SNAPSHOT_HPP
#define ONTONAV_ONTOLOGY_SNAPSHOT_HPP

#include <string>
#include <string_view>

#include "ontonav/ontology/ontology.hpp"

namespace ontonav::ontology {

  /// Byte-stable XML: nodes sorted by id, arcs by (kind, from, to).
  std::string export_snapshot(const Ontology &ontology);

  /// Strict inverse of export_snapshot; throws SchemaViolation(path).
  Ontology import_snapshot(std::string_view document);

}  // namespace ontonav::ontology

#endif  // ONTONAV_ONTOLOGY_SNAPSHOT_HPP
