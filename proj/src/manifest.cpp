#include "ferfreq/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <utility>

#include <json.hpp>

#include "ferfreq/error.hpp"

namespace ferfreq {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// subjectNN -> NN as 1..255, or nullopt when the stem does not qualify.
std::optional<int> parse_subject(std::string_view stem) {
  constexpr std::string_view kPrefix = "subject";
  if (stem.substr(0, kPrefix.size()) != kPrefix) return std::nullopt;
  const std::string_view digits = stem.substr(kPrefix.size());
  if (digits.empty() || digits.size() > 3) return std::nullopt;
  int value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + (c - '0');
  }
  if (value < 1 || value > 255) return std::nullopt;
  return value;
}

}  // namespace

DatasetManifest scan_corpus(const std::string& root) {
  std::error_code ec;
  fs::directory_iterator it(root, ec);
  if (ec) throw IoError("cannot read directory " + root + ": " + ec.message());

  DatasetManifest m;
  std::set<std::pair<int, int>> seen;
  for (const fs::directory_entry& de : it) {
    if (!de.is_regular_file()) continue;
    const std::string name = de.path().filename().string();
    const std::size_t dot = name.find('.');
    if (dot == std::string::npos) {
      std::cerr << "warning: skipping " << de.path().string() << ": no label suffix\n";
      continue;
    }
    const std::optional<int> subject = parse_subject(std::string_view(name).substr(0, dot));
    if (!subject) {
      std::cerr << "warning: skipping " << de.path().string() << ": not a subjectNN file\n";
      continue;
    }
    const std::size_t dot2 = name.find('.', dot + 1);
    const std::string token =
        name.substr(dot + 1, dot2 == std::string::npos ? std::string::npos : dot2 - dot - 1);
    const std::optional<Emotion> label = emotion_from_name(token);
    if (!label) {
      std::cerr << "warning: skipping " << de.path().string() << ": expression \"" << token
                << "\" not used\n";
      continue;
    }
    if (!seen.insert({*subject, emotion_id(*label)}).second) {
      throw FormatError("duplicate subject/label pair: " + de.path().string());
    }
    m.entries.push_back(CorpusEntry{de.path().generic_string(),
                                    static_cast<std::uint8_t>(*subject), *label});
  }
  if (m.entries.empty()) throw EmptyCorpusError("no corpus files in " + root);
  std::sort(m.entries.begin(), m.entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.path < b.path; });
  return m;
}

std::string manifest_to_json(const DatasetManifest& m) {
  Json entries = Json::array();
  for (const CorpusEntry& e : m.entries) {
    entries.push_back({{"path", e.path},
                       {"subject", static_cast<int>(e.subject)},
                       {"label_id", emotion_id(e.label)},
                       {"label_name", std::string(emotion_name(e.label))}});
  }
  Json doc;
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

DatasetManifest manifest_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed manifest json: ") + e.what());
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw FormatError("manifest json lacks an entries array");
  }
  DatasetManifest m;
  for (const Json& e : doc["entries"]) {
    try {
      const int subject = e.at("subject").get<int>();
      const int label_id = e.at("label_id").get<int>();
      const std::optional<Emotion> label = emotion_from_id(label_id);
      if (subject < 1 || subject > 255 || !label) {
        throw FormatError("manifest entry out of range");
      }
      m.entries.push_back(CorpusEntry{e.at("path").get<std::string>(),
                                      static_cast<std::uint8_t>(subject), *label});
    } catch (const Json::exception& ex) {
      throw FormatError(std::string("malformed manifest entry: ") + ex.what());
    }
  }
  return m;
}

void save_manifest(const DatasetManifest& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << manifest_to_json(m);
  if (!out) throw IoError("write failed: " + path);
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return manifest_from_json(text);
}

}  // namespace ferfreq
