/* Copyright 2026 The invsub Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "invsub/scan.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "invsub/json_io.hpp"
#include "parallel.hpp"

namespace invsub {

namespace {

std::string fnv1a64(const std::vector<Code>& table) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Code v : table) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFFU;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Coset key of every element for the linear subspace spanned by rows.
void fill_labels(const FieldSpec& spec, const std::vector<Code>& rows, const std::vector<int>& pivots,
                 std::vector<Code>& label) {
  const auto order = static_cast<std::size_t>(spec.order());
  label.resize(order);
  if (spec.p() == 2) {
    // reduce is linear: peel off the lowest set bit.
    label[0] = 0;
    for (std::size_t x = 1; x < order; ++x) {
      const std::size_t low = x & (~x + 1);
      label[x] = label[x ^ low] ^ (x == low ? reduce_against(spec, rows, pivots, x) : label[low]);
    }
    return;
  }
  for (std::size_t x = 0; x < order; ++x) label[x] = reduce_against(spec, rows, pivots, x);
}

std::vector<int> resolve_dims(const FieldSpec& spec, const std::optional<std::vector<int>>& dims) {
  std::vector<int> out;
  if (dims) {
    out = *dims;
    for (int k : out) {
      if (k < 0 || k > spec.n()) throw Error(ErrorKind::InvalidArgument, "dimension " + std::to_string(k) + " out of range");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    for (int k = 0; k <= spec.n(); ++k) out.push_back(k);
  }
  return out;
}

void check_cap(const FieldSpec& spec, const std::vector<int>& dims, std::uint64_t cap) {
  const std::uint64_t total = affine_count(spec, dims);
  if (total > cap) {
    throw Error(ErrorKind::CapExceeded, std::to_string(total) + " candidate subspaces exceed cap " + std::to_string(cap));
  }
}

bool finding_less(const Finding& a, const Finding& b) { return a.subspace < b.subspace; }

}  // namespace

SBox::SBox(Field field, std::vector<Code> table) : field_(std::move(field)), table_(std::move(table)) {
  if (table_.size() != field_->order()) {
    throw Error(ErrorKind::WrongLength, "table has " + std::to_string(table_.size()) + " entries, field has " +
                                            std::to_string(field_->order()) + " elements");
  }
  std::vector<bool> seen(table_.size(), false);
  is_permutation_ = true;
  for (Code v : table_) {
    if (!field_->contains_code(v)) throw Error(ErrorKind::OutOfRangeEntry, "table entry " + std::to_string(v));
    if (seen[static_cast<std::size_t>(v)]) is_permutation_ = false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  digest_ = fnv1a64(table_);
}

SBox SBox::from_function(const Field& field, const std::function<Code(Code)>& fn) {
  std::vector<Code> table(static_cast<std::size_t>(field->order()));
  for (Code x = 0; x < field->order(); ++x) table[static_cast<std::size_t>(x)] = fn(x);
  return {field, std::move(table)};
}

FieldElement SBox::apply(const FieldElement& x) const {
  if (!same_field(x.field(), field_)) throw Error(ErrorKind::FieldMismatch, "element and S-box differ");
  return {field_, (*this)(x.value())};
}

SBox parse_hex_table(const Field& field, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Code> table;
  std::string token;
  while (in >> token) {
    if (token.size() < 3 || token[0] != '0' || (token[1] != 'x' && token[1] != 'X')) {
      throw Error(ErrorKind::ParseError, "expected 0x-prefixed entry, got '" + token + "'");
    }
    table.push_back(parse_code(token));
  }
  return {field, std::move(table)};
}

SBox parse_sbox_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("field") || !doc.contains("table") || !doc["table"].is_array()) {
    throw Error(ErrorKind::ParseError, "S-box JSON needs 'field' and 'table'");
  }
  const Field field = field_from_json(doc["field"]);
  std::vector<Code> table;
  for (const auto& v : doc["table"]) {
    if (!v.is_number_unsigned()) throw Error(ErrorKind::ParseError, "table entries must be non-negative integers");
    table.push_back(v.get<Code>());
  }
  return {field, std::move(table)};
}

SBox load_sbox(const std::filesystem::path& path, SBoxFormat format, const Field& field) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (format == SBoxFormat::Json) return parse_sbox_json(buf.str());
  if (!field) throw Error(ErrorKind::InvalidArgument, "hex tables need a field description");
  return parse_hex_table(field, buf.str());
}

std::string to_hex_table(const SBox& sbox) {
  int width = 1;
  for (std::uint64_t m = sbox.field()->order() - 1; m >= 16; m /= 16) ++width;
  width = std::max(width, 2);
  std::string out;
  const auto& t = sbox.table();
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += to_hex(t[i], width);
    out += (i % 16 == 15 || i + 1 == t.size()) ? '\n' : ' ';
  }
  return out;
}

SBox build_aes_sbox() {
  const Field field = aes_field();
  return SBox::from_function(field, [&](Code x) {
    const auto v = static_cast<std::uint8_t>(field->inv0(x));
    // Bit i of the output: v_i + v_{i+4} + v_{i+5} + v_{i+6} + v_{i+7} (indices mod 8).
    std::uint8_t out = 0;
    for (int i = 0; i < 8; ++i) {
      int bit = 0;
      for (int shift : {0, 4, 5, 6, 7}) bit ^= (v >> ((i + shift) % 8)) & 1;
      out |= static_cast<std::uint8_t>(bit << i);
    }
    return Code{static_cast<std::uint8_t>(out ^ 0x63U)};
  });
}

SBox inversion_sbox(const Field& field) {
  return SBox::from_function(field, [&](Code x) { return field->inv0(x); });
}

SBox identity_sbox(const Field& field) {
  return SBox::from_function(field, [](Code x) { return x; });
}

bool is_invariant(const SBox& f, const AffineSubspace& u) {
  if (!same_field(f.field(), u.field())) throw Error(ErrorKind::FieldMismatch, "subspace and S-box differ");
  for (Code x : element_codes(u, f.field()->order())) {
    if (!u.contains_code(f(x))) return false;
  }
  return true;
}

ScanReport scan_invariant(const SBox& f, std::optional<std::vector<int>> dims, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Field& field = f.field();
  const FieldSpec& spec = *field;
  ScanReport report;
  report.sbox_id = f.digest();
  report.dims_scanned = resolve_dims(spec, dims);
  check_cap(spec, report.dims_scanned, options.cap);
  const auto order = static_cast<std::size_t>(spec.order());

  for (int k : report.dims_scanned) {
    const LinearEnumerator stream(field, k, options.cap);
    std::mutex mu;
    detail::parallel_ranges(stream.size(), options.workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
      std::vector<Code> rows, label;
      std::vector<int> pivots;
      std::vector<char> bad(order, 0);
      std::vector<Finding> local;
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        stream.basis_at(idx, rows, pivots);
        fill_labels(spec, rows, pivots, label);
        for (std::size_t x = 0; x < order; ++x) {
          if (label[static_cast<std::size_t>(f(x))] != label[x]) bad[static_cast<std::size_t>(label[x])] = 1;
        }
        for (std::size_t x = 0; x < order; ++x) {
          if (label[x] != x) continue;  // not a canonical representative
          if (!bad[x]) {
            Finding hit;
            hit.subspace = AffineSubspace(LinearSubspace::from_rref(field, rows, pivots), x);
            hit.small = hit.subspace.cardinality() <= 2;
            local.push_back(std::move(hit));
          }
          bad[x] = 0;
        }
      }
      std::lock_guard lock(mu);
      report.found.insert(report.found.end(), local.begin(), local.end());
    });
    const std::uint64_t cosets = spec.order() / spec.weight(k);
    report.subspace_count_scanned += stream.size() * cosets;
    if (options.progress) {
      *options.progress << "scan dim " << k << ": " << stream.size() * cosets << " candidates\n";
    }
  }
  std::sort(report.found.begin(), report.found.end(), finding_less);
  for (const auto& hit : report.found) {
    if (!is_invariant(f, hit.subspace)) throw std::logic_error("scan reported a non-invariant subspace");
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

ScanReport scan_affine_images(const SBox& f, std::uint64_t min_card, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Field& field = f.field();
  const FieldSpec& spec = *field;
  ScanReport report;
  report.sbox_id = f.digest();
  for (int k = 0; k <= spec.n(); ++k) {
    if (spec.weight(k) >= min_card) report.dims_scanned.push_back(k);
  }
  check_cap(spec, report.dims_scanned, options.cap);

  for (int k : report.dims_scanned) {
    const AffineEnumerator stream(field, k, options.cap);
    const std::uint64_t cosets = stream.cosets_per_linear();
    std::mutex mu;
    detail::parallel_ranges(stream.linear().size(), options.workers,
                            [&](std::uint64_t begin, std::uint64_t end, unsigned) {
      std::vector<Code> rows, img_rows, members, images;
      std::vector<int> pivots, img_pivots;
      std::vector<Finding> local;
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        stream.linear().basis_at(idx, rows, pivots);
        for (std::uint64_t r = 0; r < cosets; ++r) {
          const Code rep = coset_rep_at(spec, pivots, r);
          members.assign(1, rep);
          for (Code row : rows) {
            const std::size_t base = members.size();
            for (std::uint32_t c = 1; c < spec.p(); ++c) {
              const Code step = spec.scale(row, c);
              for (std::size_t i = 0; i < base; ++i) members.push_back(spec.add(members[i], step));
            }
          }
          const Code s0 = f(members[0]);
          img_rows.clear();
          img_pivots.clear();
          bool ok = true;
          for (std::size_t i = 1; i < members.size(); ++i) {
            if (rref_insert(spec, img_rows, img_pivots, spec.sub(f(members[i]), s0)) &&
                static_cast<int>(img_rows.size()) > k) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          if (static_cast<int>(img_rows.size()) != k || !f.is_permutation()) {
            images.clear();
            for (Code m : members) images.push_back(f(m));
            std::sort(images.begin(), images.end());
            const auto distinct = static_cast<std::uint64_t>(std::unique(images.begin(), images.end()) - images.begin());
            if (distinct != spec.weight(static_cast<int>(img_rows.size()))) continue;
          }
          Finding hit;
          hit.kind = FindingKind::AffineImage;
          hit.subspace = AffineSubspace(LinearSubspace::from_rref(field, rows, pivots), rep);
          hit.small = hit.subspace.cardinality() <= 2;
          hit.image = AffineSubspace(LinearSubspace::from_rref(field, img_rows, img_pivots), s0);
          local.push_back(std::move(hit));
        }
      }
      std::lock_guard lock(mu);
      report.found.insert(report.found.end(), local.begin(), local.end());
    });
    report.subspace_count_scanned += stream.size();
    if (options.progress) *options.progress << "images dim " << k << ": " << stream.size() << " candidates\n";
  }
  std::sort(report.found.begin(), report.found.end(), finding_less);
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

std::vector<CosetSurveyEntry> coset_permutation_survey(const SBox& f, const RunOptions& options) {
  const Field& field = f.field();
  const FieldSpec& spec = *field;
  const auto order = static_cast<std::size_t>(spec.order());
  std::vector<CosetSurveyEntry> result;
  std::uint64_t total = 0;
  for (int k = 1; k < spec.n(); ++k) total += gaussian_binomial(spec.p(), spec.n(), k);
  if (total > options.cap) throw Error(ErrorKind::CapExceeded, "survey over " + std::to_string(total) + " subspaces");

  for (int k = 1; k < spec.n(); ++k) {
    const LinearEnumerator stream(field, k, options.cap);
    std::vector<CosetSurveyEntry> entries(static_cast<std::size_t>(stream.size()));
    detail::parallel_ranges(stream.size(), options.workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
      std::vector<Code> rows, label, target;
      std::vector<int> pivots;
      std::vector<char> ok(order), seen(order);
      std::vector<std::vector<Code>> images;
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        stream.basis_at(idx, rows, pivots);
        fill_labels(spec, rows, pivots, label);
        target.assign(order, 0);
        std::fill(ok.begin(), ok.end(), 1);
        std::fill(seen.begin(), seen.end(), 0);
        if (!f.is_permutation()) images.assign(order, {});
        for (std::size_t x = 0; x < order; ++x) {
          const auto rep = static_cast<std::size_t>(label[x]);
          const Code img = label[static_cast<std::size_t>(f(x))];
          if (!seen[rep]) {
            seen[rep] = 1;
            target[rep] = img;
          } else if (target[rep] != img) {
            ok[rep] = 0;
          }
          if (!f.is_permutation()) images[rep].push_back(f(x));
        }
        CosetSurveyEntry entry;
        entry.linear = LinearSubspace::from_rref(field, rows, pivots);
        for (std::size_t x = 0; x < order; ++x) {
          if (label[x] != x || !ok[x]) continue;
          if (!f.is_permutation()) {
            auto& im = images[x];
            std::sort(im.begin(), im.end());
            if (static_cast<std::uint64_t>(std::unique(im.begin(), im.end()) - im.begin()) != spec.weight(k)) continue;
          }
          entry.pairs.emplace_back(FieldElement(field, x), FieldElement(field, target[x]));
        }
        entries[static_cast<std::size_t>(idx)] = std::move(entry);
      }
    });
    for (auto& e : entries) result.push_back(std::move(e));
  }
  return result;
}

}  // namespace invsub
