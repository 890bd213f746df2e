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

#ifndef CYCLESE_MANIFEST_H_
#define CYCLESE_MANIFEST_H_

#include <string>
#include <vector>

namespace cyclese {

// One line of a corpus manifest:
//   id <TAB> clean path <TAB> noisy path <TAB> snr_db <TAB> noise kind
// Either path may be "-" when that stream does not exist for the record.
// Relative paths are resolved against the manifest's directory on load.
struct ManifestRecord {
  std::string id;
  std::string clean_path;
  std::string noisy_path;
  double snr_db = 0.0;
  std::string noise_kind;

  bool has_clean() const { return clean_path != "-"; }
  bool has_noisy() const { return noisy_path != "-"; }
};

using Manifest = std::vector<ManifestRecord>;

void WriteManifest(const std::string& path, const Manifest& records);

// Throws kFormat on malformed lines, kData on duplicate ids or (when
// `check_files`) a referenced file that does not exist.
Manifest ReadManifest(const std::string& path, bool check_files = true);

}  // namespace cyclese

#endif  // CYCLESE_MANIFEST_H_
