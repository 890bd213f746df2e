// Copyright 2026 The CycleSE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cyclese/manifest.h"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "cyclese/error.h"

namespace cyclese {
namespace fs = std::filesystem;

void WriteManifest(const std::string& path, const Manifest& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write manifest " + path);
  out << std::setprecision(17);
  for (const ManifestRecord& r : records) {
    out << r.id << '\t' << r.clean_path << '\t' << r.noisy_path << '\t' << r.snr_db << '\t'
        << r.noise_kind << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "short write to manifest " + path);
}

Manifest ReadManifest(const std::string& path, bool check_files) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open manifest " + path);
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&base](const std::string& p) {
    if (p == "-" || fs::path(p).is_absolute()) return p;
    return (base / p).string();
  };

  Manifest records;
  std::set<std::string> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() != 5) {
      throw Error(ErrorCode::kFormat, path + ":" + std::to_string(line_no) +
                                          ": expected 5 tab-separated fields");
    }
    ManifestRecord r;
    r.id = fields[0];
    r.clean_path = resolve(fields[1]);
    r.noisy_path = resolve(fields[2]);
    try {
      r.snr_db = std::stod(fields[3]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kFormat, path + ":" + std::to_string(line_no) + ": bad snr");
    }
    r.noise_kind = fields[4];
    if (r.id.empty()) throw Error(ErrorCode::kFormat, path + ": empty id");
    if (!ids.insert(r.id).second) {
      throw Error(ErrorCode::kData, path + ": duplicate id " + r.id);
    }
    if (check_files) {
      for (const std::string& p : {r.clean_path, r.noisy_path}) {
        if (p != "-" && !fs::exists(p)) {
          throw Error(ErrorCode::kData, path + ": missing file " + p);
        }
      }
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace cyclese
