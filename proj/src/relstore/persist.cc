// Copyright 2026 The agq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <fstream>
#include <sstream>

#include "agq/relstore.h"

namespace agq {

namespace fs = std::filesystem;

namespace {

void check_field(const std::string& value, const char* what) {
  if (value.find_first_of("\t\n\r") != std::string::npos) {
    throw StoreError(std::string(what) + " '" + value +
                     "' contains a tab or line break");
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StoreError("cannot write " + path.string());
  out << content;
  if (!out) throw StoreError("write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Rows of a tab-separated file. Trailing empty lines are tolerated, empty
// lines elsewhere are not.
std::vector<std::vector<std::string>> read_rows(const fs::path& path,
                                                std::size_t fields) {
  std::string content = read_file(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    lines.push_back(content.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<std::string> row;
    std::size_t pos = 0;
    // The last field takes the rest of the line.
    for (std::size_t f = 0; f + 1 < fields; ++f) {
      std::size_t tab = lines[i].find('\t', pos);
      if (tab == std::string::npos) break;
      row.push_back(lines[i].substr(pos, tab - pos));
      pos = tab + 1;
    }
    row.push_back(lines[i].substr(pos));
    if (row.size() != fields ||
        (fields > 1 && row.back().find('\t') != std::string::npos)) {
      throw StoreError(path.string() + ":" + std::to_string(i + 1) +
                       ": expected " + std::to_string(fields) + " fields");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Int>
Int parse_number(const std::string& text, const fs::path& path,
                 std::size_t row) {
  Int v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw StoreError(path.string() + ":" + std::to_string(row + 1) +
                     ": malformed number '" + text + "'");
  }
  return v;
}

}  // namespace

void save(const RelationalStore& s, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StoreError("cannot create " + dir.string() + ": " + ec.message());

  std::string arcs, times, labels, timelines, meta;
  for (const ArcRow& r : s.arcs()) {
    check_field(r.type, "arc type");
    arcs += std::to_string(r.arc.value) + '\t' + std::to_string(r.src.value) +
            '\t' + std::to_string(r.dst.value) + '\t' + r.type + '\n';
  }
  for (const TimeRow& r : s.times()) {
    times += std::to_string(r.node.value) + '\t' +
             std::to_string(r.time.ticks) + '\n';
  }
  for (const LabelRow& r : s.labels()) {
    check_field(r.label, "label");
    labels += std::to_string(r.arc.value) + '\t' + r.label + '\n';
  }
  for (const TimelineRow& r : s.timelines()) {
    timelines += std::to_string(r.node.value) + '\t' +
                 std::to_string(r.timeline.value) + '\n';
  }
  check_field(s.meta().corpus, "corpus name");
  meta += "resolution=" + std::to_string(s.meta().resolution) + '\n';
  meta += "corpus=" + s.meta().corpus + '\n';
  for (const auto& [alias, type] : s.meta().type_aliases) {
    check_field(alias, "type alias");
    check_field(type, "type alias target");
    if (alias.find('=') != std::string::npos) {
      throw StoreError("type alias '" + alias + "' contains '='");
    }
    meta += "type." + alias + '=' + type + '\n';
  }

  write_file(dir / "arc.tsv", arcs);
  write_file(dir / "time.tsv", times);
  write_file(dir / "label.tsv", labels);
  write_file(dir / "meta.txt", meta);
  if (!s.timelines().empty()) {
    write_file(dir / "timeline.tsv", timelines);
  } else {
    fs::remove(dir / "timeline.tsv", ec);
  }
}

RelationalStore load(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw StoreError("corpus directory " + dir.string() + " does not exist");
  }
  for (const char* required : {"arc.tsv", "time.tsv", "label.tsv", "meta.txt"}) {
    if (!fs::exists(dir / required)) {
      throw StoreError("missing " + (dir / required).string());
    }
  }

  std::vector<ArcRow> arcs;
  fs::path path = dir / "arc.tsv";
  auto rows = read_rows(path, 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    arcs.push_back({ArcId(parse_number<std::uint64_t>(rows[i][0], path, i)),
                    NodeId(parse_number<std::uint64_t>(rows[i][1], path, i)),
                    NodeId(parse_number<std::uint64_t>(rows[i][2], path, i)),
                    rows[i][3]});
  }

  std::vector<TimeRow> times;
  path = dir / "time.tsv";
  rows = read_rows(path, 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    times.push_back({NodeId(parse_number<std::uint64_t>(rows[i][0], path, i)),
                     Time(parse_number<std::int64_t>(rows[i][1], path, i))});
  }

  std::vector<LabelRow> labels;
  path = dir / "label.tsv";
  rows = read_rows(path, 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    labels.push_back(
        {ArcId(parse_number<std::uint64_t>(rows[i][0], path, i)), rows[i][1]});
  }

  std::vector<TimelineRow> timelines;
  path = dir / "timeline.tsv";
  if (fs::exists(path)) {
    rows = read_rows(path, 2);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      timelines.push_back(
          {NodeId(parse_number<std::uint64_t>(rows[i][0], path, i)),
           TimelineId(parse_number<std::uint64_t>(rows[i][1], path, i))});
    }
  }

  StoreMeta meta;
  path = dir / "meta.txt";
  rows = read_rows(path, 1);
  bool have_resolution = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string& line = rows[i][0];
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw StoreError(path.string() + ":" + std::to_string(i + 1) +
                       ": expected key=value");
    }
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "resolution") {
      meta.resolution = parse_number<std::int64_t>(value, path, i);
      have_resolution = true;
    } else if (key == "corpus") {
      meta.corpus = value;
    } else if (key.starts_with("type.") && key.size() > 5) {
      meta.type_aliases[key.substr(5)] = value;
    } else {
      throw StoreError(path.string() + ":" + std::to_string(i + 1) +
                       ": unknown meta key '" + key + "'");
    }
  }
  if (!have_resolution) {
    throw StoreError(path.string() + ": missing resolution");
  }

  try {
    return RelationalStore(std::move(arcs), std::move(times),
                           std::move(labels), std::move(timelines),
                           std::move(meta));
  } catch (const StoreError& e) {
    throw StoreError(dir.string() + ": " + e.what());
  }
}

}  // namespace agq
