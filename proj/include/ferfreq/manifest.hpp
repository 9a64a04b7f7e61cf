#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ferfreq/labels.hpp"

namespace ferfreq {

struct CorpusEntry {
  std::string path;
  std::uint8_t subject = 0;
  Emotion label = Emotion::kHappy;
};

// Entries sorted lexicographically by path; no duplicate (subject, label).
struct DatasetManifest {
  std::vector<CorpusEntry> entries;
};

// Scans `root` (non-recursive) for files named subjectNN.<emotion> where
// <emotion> is one of the five known labels. Other files are skipped with a
// warning on stderr. Throws IoError if root is unreadable, FormatError on a
// duplicate (subject, label) pair, EmptyCorpusError if nothing matches.
DatasetManifest scan_corpus(const std::string& root);

std::string manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const std::string& text);

void save_manifest(const DatasetManifest& m, const std::string& path);
DatasetManifest load_manifest(const std::string& path);

}  // namespace ferfreq
