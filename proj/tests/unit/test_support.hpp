#ifndef ONTONAV_TEST_SUPPORT_HPP
#define ONTONAV_TEST_SUPPORT_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ontonav/ontology/operations.hpp"
#include "ontonav/text/pipeline.hpp"

namespace ontonav::testing {

  inline std::filesystem::path data_dir() {
    return ONTONAV_TEST_DATA_DIR;
  }

  inline std::filesystem::path fixture_dir() {
    return ONTONAV_TEST_FIXTURE_DIR;
  }

  inline std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  inline std::string fixture(const std::string &name) {
    return read_file(fixture_dir() / name);
  }

  inline const text::TextPipeline &pipeline() {
    static const auto p = text::TextPipeline::load(data_dir());
    return p;
  }

  /// Small taxonomy fixture, no descriptors.
  inline const ontology::Ontology &small_ccs() {
    static const auto o = ontology::load_ccs(fixture("ccs_small.txt"), pipeline());
    return o;
  }

  /// Small taxonomy with descriptors attached and the ROOT bucket present.
  inline const ontology::Ontology &small_ontology() {
    static const auto o = [] {
      auto descriptors = ontology::load_descriptors(fixture("descriptors_small.txt"));
      auto attached = ontology::attach_descriptors(small_ccs(), descriptors, pipeline());
      return ontology::ensure_root_bucket(attached, pipeline());
    }();
    return o;
  }

  inline ontology::NodeId id(const char *code) {
    return ontology::NodeId::parse(code);
  }

  /// Fresh empty directory under the system temp dir.
  inline std::filesystem::path scratch_dir(const std::string &tag) {
    static std::mt19937_64 rng(std::random_device{}());
    auto dir = std::filesystem::temp_directory_path()
             / ("ontonav-" + tag + "-" + std::to_string(rng()));
    std::filesystem::create_directories(dir);
    return dir;
  }

}  // namespace ontonav::testing

#endif
