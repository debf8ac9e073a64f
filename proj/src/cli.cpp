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

#include "invsub/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "invsub/certify.hpp"
#include "invsub/inv_map.hpp"
#include "invsub/json_io.hpp"
#include "invsub/scan.hpp"

namespace invsub {

namespace {

using nlohmann::json;

struct Config {
  std::string field_file;
  std::optional<std::uint64_t> p;
  std::optional<int> n;
  std::string modulus;
  unsigned workers = 1;
  std::optional<std::uint64_t> cap;
  std::string output;
  std::string format;

  RunOptions run() const {
    RunOptions r;
    r.workers = workers;
    if (cap) r.cap = *cap;
    return r;
  }
};

std::vector<std::uint32_t> parse_coefficients(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad modulus coefficient '" + token + "'");
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// The field named by --field or --p/--n/--modulus; `fallback` when neither
/// is given.
Field resolve_field(const Config& cfg, const Field& fallback = nullptr) {
  if (!cfg.field_file.empty()) {
    if (cfg.field_file == "builtin:aes") return aes_field();
    json doc;
    try {
      doc = json::parse(read_file(cfg.field_file));
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
    return field_from_json(doc);
  }
  if (cfg.p || cfg.n) {
    if (!cfg.p || !cfg.n) throw Error(ErrorKind::InvalidArgument, "--p and --n go together");
    std::optional<std::vector<std::uint32_t>> modulus;
    if (!cfg.modulus.empty()) modulus = parse_coefficients(cfg.modulus);
    return make_field(*cfg.p, *cfg.n, std::move(modulus));
  }
  if (fallback) return fallback;
  throw Error(ErrorKind::InvalidArgument, "a field is required (--field or --p/--n)");
}

std::string poly_string(const std::vector<std::uint32_t>& coeffs) {
  std::string out;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    const std::uint32_t c = coeffs[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (c != 1 || i == 0) out += std::to_string(c);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::string subspace_string(const AffineSubspace& u) {
  const FieldSpec& spec = *u.field();
  std::string out = format_code(spec, u.rep_code()) + " + <";
  for (std::size_t i = 0; i < u.linear().basis().size(); ++i) {
    if (i) out += ", ";
    out += format_code(spec, u.linear().basis()[i]);
  }
  return out + ">";
}

std::string element_string(const FieldElement& x) { return format_code(x.spec(), x.value()); }

/// Explicit point set for subspaces of at most four elements.
std::string short_subspace_string(const AffineSubspace& u) {
  if (u.cardinality() > 4) return subspace_string(u);
  std::string out = "{";
  for (Code v : element_codes(u)) out += (out.size() > 1 ? ", " : "") + format_code(*u.field(), v);
  return out + "}";
}

std::string set_string(const std::set<int>& s) {
  std::string out = "{";
  for (int d : s) out += (out.size() > 1 ? ", " : "") + std::to_string(d);
  return out + "}";
}

bool text_output(const Config& cfg, bool default_text = false) {
  if (cfg.format.empty()) return default_text;
  return cfg.format == "text";
}

// ---------------------------------------------------------------------------
// Subcommands. Each writes its result to `out` and returns an exit code.

int cmd_field(const Config& cfg, const std::string& element_text, std::ostream& out) {
  const Field field = resolve_field(cfg);
  const FieldSpec& spec = *field;
  json doc = field_to_json(spec);
  doc["order"] = spec.order();
  doc["subfield_degrees"] = spec.divisors();
  std::optional<FieldElement> x;
  if (!element_text.empty()) {
    x = parse_element(field, element_text);
    doc["element"] = json{{"value", element_to_json(*x)},
                          {"inverse", element_to_json(inv0(*x))},
                          {"trace", trace(*x).value()},
                          {"is_square", is_square(*x)},
                          {"subfield_degrees", subfield_divisors(*x)},
                          {"in_f_circle", in_f_circle(*x)}};
  }
  if (!text_output(cfg)) {
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "GF(" << spec.p() << "^" << spec.n() << "), order " << spec.order() << "\n";
  out << "modulus: " << poly_string(spec.modulus()) << "\n";
  out << "subfield degrees: " << set_string({spec.divisors().begin(), spec.divisors().end()}) << "\n";
  if (x) {
    out << "x = " << element_string(*x) << "\n";
    out << "inverse: " << element_string(inv0(*x)) << "\n";
    out << "trace: " << trace(*x).value() << "\n";
    out << "square: " << (is_square(*x) ? "yes" : "no") << "\n";
    out << "subfields containing x: " << set_string(subfield_divisors(*x)) << "\n";
    out << "in no proper subfield: " << (in_f_circle(*x) ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

int cmd_classify(const Config& cfg, bool brute, std::ostream& out) {
  const Field field = resolve_field(cfg);
  const StableSubspaceReport report = classify_field(field, brute, cfg.run());
  if (!text_output(cfg)) {
    out << to_json(report).dump(2) << "\n";
    return kExitOk;
  }
  out << "predicted: " << report.predicted.size() << "\n";
  for (const auto& u : report.predicted) out << "  " << subspace_string(u) << "\n";
  if (report.brute) {
    out << "brute force: " << report.brute->size() << " of " << report.brute_candidates << " candidates\n";
    out << "agree: " << (report.agree ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

void print_cert_text(const CertReport& r, std::ostream& out) {
  out << "form: " << to_string(r.form) << " (" << r.description << ")\n";
  out << "t = " << element_string(r.t_value) << "\n";
  if (r.value_at_b) out << "b^{-1} f(b) = " << element_string(*r.value_at_b) << "\n";
  if (r.criterion_value) out << "criterion value = " << element_string(*r.criterion_value) << "\n";
  out << "subfields containing t: " << set_string(r.t_divisors) << "\n";
  out << "nontrivial: " << to_string(r.nontrivial_verdict) << "\n";
  if (r.witness) out << "witness: " << subspace_string(*r.witness) << "\n";
  if (r.exhaustive) {
    out << "fixed points: ";
    if (r.fixed_points.empty()) out << "none";
    for (std::size_t i = 0; i < r.fixed_points.size(); ++i) out << (i ? ", " : "") << element_string(r.fixed_points[i]);
    out << "\ntwo-cycles: ";
    if (r.two_cycles.empty()) out << "none";
    for (std::size_t i = 0; i < r.two_cycles.size(); ++i) {
      out << (i ? ", " : "") << "{" << element_string(r.two_cycles[i].first) << ", "
          << element_string(r.two_cycles[i].second) << "}";
    }
    out << "\n";
  }
  if (r.brute) {
    out << "exhaustive scan: " << r.brute->candidates << " candidates, " << r.brute->invariant.size() << " invariant\n";
  }
  out << "overall: " << to_string(r.overall) << "\n";
  for (const auto& note : r.notes) out << "note: " << note << "\n";
}

struct CertifyArgs {
  std::string matrix;
  std::string sbox;
  std::string sbox_format = "hex";
  std::string alpha;
  std::string b;
  bool brute_check = false;
};

LinearMap parse_matrix(const Field& field, const std::string& spec_text) {
  if (spec_text == "builtin:aes") {
    if (!same_field(field, aes_field()) && !(*field == *aes_field())) {
      throw Error(ErrorKind::FieldMismatch, "builtin:aes needs the AES field");
    }
    return LinearMap(field, LinearMap::aes().matrix());
  }
  if (spec_text == "identity") return LinearMap::identity(field);
  if (spec_text.rfind("mul:", 0) == 0) return LinearMap::multiplication_by(parse_element(field, spec_text.substr(4)));
  if (spec_text.rfind("frob:", 0) == 0) {
    try {
      return LinearMap::frobenius_power(field, std::stoi(spec_text.substr(5)));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad Frobenius power in '" + spec_text + "'");
    }
  }
  std::vector<std::vector<std::uint32_t>> rows;
  std::stringstream text(read_file(spec_text));
  std::string line;
  while (std::getline(text, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ls(line);
    std::vector<std::uint32_t> row;
    std::string token;
    while (ls >> token) row.push_back(static_cast<std::uint32_t>(parse_code(token)));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return LinearMap::from_rows(field, rows);
}

SBox resolve_sbox(const std::string& source, const std::string& format, const Field& field) {
  if (source == "builtin:aes") return build_aes_sbox();
  if (source == "builtin:inv") return inversion_sbox(field ? field : aes_field());
  if (source == "builtin:identity") return identity_sbox(field ? field : aes_field());
  if (format == "json") return load_sbox(source, SBoxFormat::Json);
  if (format != "hex") throw Error(ErrorKind::InvalidArgument, "table format must be hex or json");
  if (!field) throw Error(ErrorKind::InvalidArgument, "a hex table needs --field");
  return load_sbox(source, SBoxFormat::HexTable, field);
}

Field optional_field(const Config& cfg) {
  return cfg.field_file.empty() && !cfg.p && !cfg.n ? nullptr : resolve_field(cfg);
}

int cmd_certify(const Config& cfg, const CertifyArgs& args, std::ostream& out) {
  const int forms = !args.matrix.empty() + !args.sbox.empty() + !args.alpha.empty();
  if (forms != 1) throw Error(ErrorKind::InvalidArgument, "give exactly one of --matrix, --sbox, --alpha");
  if (args.b.empty()) throw Error(ErrorKind::InvalidArgument, "--b is required");
  CertifyOptions options;
  options.brute_check = args.brute_check;
  options.run = cfg.run();

  CertReport report;
  if (!args.sbox.empty()) {
    const SBox table = resolve_sbox(args.sbox, args.sbox_format, optional_field(cfg));
    report = certify_via_value(table, parse_element(table.field(), args.b), options);
  } else {
    const bool aes = args.matrix == "builtin:aes";
    const Field field = resolve_field(cfg, aes ? aes_field() : nullptr);
    const FieldElement b = parse_element(field, args.b);
    if (!args.alpha.empty()) {
      report = certify_scalar(parse_element(field, args.alpha), b, options);
    } else {
      report = certify_general(parse_matrix(field, args.matrix), b, options);
    }
  }
  if (text_output(cfg)) {
    print_cert_text(report, out);
  } else {
    out << to_json(report).dump(2) << "\n";
  }
  return report.overall == OverallVerdict::Inconclusive && !args.brute_check ? kExitInconclusive : kExitOk;
}

/// Every c with alpha inv0(x) + b certified, as (alpha, b) = (c b^2, b).
int cmd_construct(const Config& cfg, const std::string& b_text, std::optional<std::uint64_t> limit, bool brute,
                  std::ostream& out) {
  const Field field = resolve_field(cfg);
  const FieldSpec& spec = *field;
  const RunOptions run = cfg.run();
  if (spec.order() - 1 > run.cap) throw Error(ErrorKind::CapExceeded, "field too large to enumerate parameters");
  const FieldElement b = parse_element(field, b_text.empty() ? "1" : b_text);
  if (b.is_zero()) throw Error(ErrorKind::ZeroB, "b must be nonzero");
  const FieldElement b2 = b * b;
  const FieldElement quarter = spec.p() == 2 ? FieldElement::zero(field)
                                             : inv0(FieldElement(field, spec.from_integer(4)));
  CertifyOptions options;
  options.run = run;

  json pairs = json::array();
  std::ostringstream text;
  std::uint64_t emitted = 0;
  for (Code cv = 1; cv < spec.order(); ++cv) {
    if (limit && emitted >= *limit) break;
    const FieldElement c(field, cv);
    const bool member = spec.p() == 2 ? m2_member(c) : mp_member(c + quarter);
    if (!member) continue;
    const FieldElement alpha = c * b2;
    const CertReport cert = certify_scalar(alpha, b, options);
    if (cert.overall != OverallVerdict::NoInvariantExceptWholeField) {
      throw std::logic_error("constructed pair failed certification");
    }
    json entry{{"alpha", element_to_json(alpha)}, {"b", element_to_json(b)}, {"c", element_to_json(c)},
               {"certified", true}};
    text << "alpha = " << element_string(alpha) << ", b = " << element_string(b);
    if (brute) {
      const ScanReport scan = scan_invariant(scalar_sbox(alpha, b), std::nullopt, run);
      const bool only_whole = scan.found.size() == 1 && scan.found[0].subspace.cardinality() == spec.order();
      if (!only_whole) throw std::logic_error("constructed pair has an invariant proper subspace");
      entry["brute_only_whole_field"] = true;
      text << "  [scan: only the whole field]";
    }
    text << "\n";
    pairs.push_back(std::move(entry));
    ++emitted;
  }
  if (text_output(cfg)) {
    out << emitted << " pairs\n" << text.str();
  } else {
    out << json{{"field", field_to_json(spec)}, {"count", emitted}, {"pairs", std::move(pairs)}}.dump(2) << "\n";
  }
  return kExitOk;
}

struct ScanArgs {
  std::string sbox;
  std::string sbox_format = "hex";
  std::string dims;
  bool images = false;
  std::uint64_t min_card = 3;
  bool survey = false;
  bool progress = false;
};

int cmd_scan(const Config& cfg, const ScanArgs& args, std::ostream& out, std::ostream& err) {
  if (args.sbox.empty()) throw Error(ErrorKind::InvalidArgument, "--sbox is required");
  const SBox sbox = resolve_sbox(args.sbox, args.sbox_format, optional_field(cfg));
  RunOptions run = cfg.run();
  if (args.progress) run.progress = &err;
  std::optional<std::vector<int>> dims;
  if (!args.dims.empty()) {
    dims.emplace();
    for (std::uint32_t d : parse_coefficients(args.dims)) dims->push_back(static_cast<int>(d));
  }
  if (args.survey) {
    const auto survey = coset_permutation_survey(sbox, run);
    if (text_output(cfg)) {
      for (const auto& entry : survey) {
        out << subspace_string(AffineSubspace(entry.linear, 0)) << ": " << entry.pairs.size() << " coset pairs\n";
      }
    } else {
      out << json{{"sbox_id", sbox.digest()}, {"survey", to_json(survey)}}.dump(2) << "\n";
    }
    return kExitOk;
  }
  const ScanReport report = args.images ? scan_affine_images(sbox, args.min_card, run) : scan_invariant(sbox, dims, run);
  if (!text_output(cfg)) {
    out << to_json(report).dump(2) << "\n";
    return kExitOk;
  }
  out << "sbox: " << report.sbox_id << "\n";
  out << "scanned: " << report.subspace_count_scanned << "\n";
  out << "found: " << report.found.size() << "\n";
  for (const auto& f : report.found) {
    out << "  " << subspace_string(f.subspace);
    if (f.image) out << " -> " << subspace_string(*f.image);
    out << "\n";
  }
  return kExitOk;
}

int cmd_aes_demo(const Config& cfg, bool skip_scan, std::ostream& out) {
  const Field field = aes_field();
  const SBox sbox = build_aes_sbox();
  const FieldElement b(field, 0x63);
  const LinearMap a = LinearMap::aes();
  if (form_sbox(a, b).table() != sbox.table()) throw std::logic_error("AES table disagrees with A(inv0(x)) + b");

  CertifyOptions options;
  options.run = cfg.run();
  const CertReport cert = certify_via_value(sbox, b, options);
  const CertReport general = certify_general(a, b, options);
  const FieldElement t = cert.t_value;
  const FieldElement sb = sbox.apply(b);

  std::optional<ScanReport> scan;
  if (!skip_scan) scan = scan_invariant(sbox, std::nullopt, options.run);

  json doc{{"modulus", field->modulus()},
           {"b", element_to_json(b)},
           {"S(b)", element_to_json(sb)},
           {"t", element_to_json(t)},
           {"general_t", element_to_json(general.t_value)},
           {"frobenius", json::array()},
           {"t_in_f_circle", cert.t_in_f_circle},
           {"nontrivial_verdict", to_string(cert.nontrivial_verdict)}};
  std::ostringstream text;
  text << "field: GF(2^8) modulo " << poly_string(field->modulus()) << "\n";
  text << "b = " << to_hex(b.value()) << "\n";
  text << "S(b) = " << to_hex(sb.value()) << "\n";
  text << "t = b^{-1} S(b) = " << to_hex(t.value()) << "\n";
  for (int k : {1, 2, 4}) {
    const FieldElement tk = frobenius(t, static_cast<std::uint64_t>(k));
    const std::uint64_t e = std::uint64_t{1} << k;
    text << "t^{" << e << "} = " << to_hex(tk.value()) << (tk == t ? " = t" : " != t") << "\n";
    doc["frobenius"].push_back(json{{"exponent", e}, {"value", element_to_json(tk)}, {"equals_t", tk == t}});
  }
  text << "t lies in no proper subfield: " << (cert.t_in_f_circle ? "yes" : "no") << "\n";
  text << "nontrivial invariant affine subspaces: " << to_string(cert.nontrivial_verdict) << "\n";
  text << "b^{-1} A(b^{-1}) = " << to_hex(general.t_value.value()) << " (general form, "
       << to_string(general.nontrivial_verdict) << ")\n";
  text << "fixed points: ";
  json fixed = json::array();
  if (cert.fixed_points.empty()) text << "none";
  for (std::size_t i = 0; i < cert.fixed_points.size(); ++i) {
    text << (i ? ", " : "") << to_hex(cert.fixed_points[i].value());
    fixed.push_back(element_to_json(cert.fixed_points[i]));
  }
  text << "\n";
  json cycles = json::array();
  for (const auto& [x, y] : cert.two_cycles) {
    text << "two-cycle: S(" << to_hex(x.value()) << ") = " << to_hex(y.value()) << ", S(" << to_hex(y.value())
         << ") = " << to_hex(x.value()) << ", so {" << to_hex(x.value()) << ", " << to_hex(y.value())
         << "} is invariant\n";
    cycles.push_back(json::array({element_to_json(x), element_to_json(y)}));
  }
  doc["fixed_points"] = std::move(fixed);
  doc["two_cycles"] = std::move(cycles);
  if (scan) {
    json found = json::array();
    text << "full scan: " << scan->subspace_count_scanned << " affine subspaces checked, "
         << scan->found.size() << " invariant:";
    for (const auto& f : scan->found) {
      text << " " << (f.subspace.cardinality() == field->order() ? "whole field" : short_subspace_string(f.subspace));
      found.push_back(subspace_to_json(f.subspace));
    }
    text << "\n";
    doc["scan"] = json{{"subspace_count_scanned", scan->subspace_count_scanned}, {"invariant", std::move(found)}};
  }
  text << "overall: " << to_string(cert.overall) << "\n";
  doc["overall"] = to_string(cert.overall);
  if (text_output(cfg, /*default_text=*/true)) {
    out << text.str();
  } else {
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant affine subspaces of inversion-based S-boxes", "invsub"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--field", cfg.field_file, "Field JSON file, or builtin:aes");
  app.add_option("--p", cfg.p, "Characteristic");
  app.add_option("--n", cfg.n, "Extension degree");
  app.add_option("--modulus", cfg.modulus, "Modulus coefficients c0,c1,...,cn");
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.cap, "Candidate cap")->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "Write the result to this file");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::function<int(std::ostream&)> action;

  auto* field_cmd = app.add_subcommand("field", "Describe a field and optionally one element");
  auto element_text = std::make_shared<std::string>();
  field_cmd->add_option("--element", *element_text, "Element as 0x-hex or decimal");
  field_cmd->callback([&] { action = [&](std::ostream& o) { return cmd_field(cfg, *element_text, o); }; });

  auto* classify_cmd = app.add_subcommand("classify", "Affine subspaces whose image under inversion is affine");
  auto brute = std::make_shared<bool>(false);
  classify_cmd->add_flag("--brute", *brute, "Also run the exhaustive search");
  classify_cmd->callback([&] { action = [&](std::ostream& o) { return cmd_classify(cfg, *brute, o); }; });

  auto* certify_cmd = app.add_subcommand("certify", "Certify A(inv0(x)) + b or alpha inv0(x) + b");
  CertifyArgs cargs;
  certify_cmd->add_option("--matrix", cargs.matrix, "Matrix file, builtin:aes, identity, mul:<g> or frob:<k>");
  certify_cmd->add_option("--sbox", cargs.sbox, "Table file or builtin:aes|inv|identity");
  certify_cmd->add_option("--sbox-format", cargs.sbox_format)->check(CLI::IsMember({"hex", "json"}));
  certify_cmd->add_option("--alpha", cargs.alpha, "Scalar alpha");
  certify_cmd->add_option("--b", cargs.b, "Constant b");
  certify_cmd->add_flag("--brute-check", cargs.brute_check, "Append the exhaustive scan");
  certify_cmd->callback([&] { action = [&](std::ostream& o) { return cmd_certify(cfg, cargs, o); }; });

  auto* construct_cmd = app.add_subcommand("construct", "Parameters (alpha, b) with no proper invariant subspace");
  auto b_text = std::make_shared<std::string>();
  auto limit = std::make_shared<std::optional<std::uint64_t>>();
  auto construct_brute = std::make_shared<bool>(false);
  construct_cmd->add_option("--b", *b_text, "Constant b (default 1)");
  construct_cmd->add_option("--limit", *limit, "Stop after this many pairs");
  construct_cmd->add_flag("--brute-check", *construct_brute, "Confirm each pair by exhaustive scan");
  construct_cmd->callback([&] {
    action = [&](std::ostream& o) { return cmd_construct(cfg, *b_text, *limit, *construct_brute, o); };
  });

  auto* scan_cmd = app.add_subcommand("scan", "Scan a table for invariant affine subspaces");
  ScanArgs sargs;
  scan_cmd->add_option("--sbox", sargs.sbox, "Table file or builtin:aes|inv|identity");
  scan_cmd->add_option("--sbox-format", sargs.sbox_format)->check(CLI::IsMember({"hex", "json"}));
  scan_cmd->add_option("--dims", sargs.dims, "Comma-separated dimensions");
  scan_cmd->add_flag("--images", sargs.images, "Report subspaces mapped onto affine subspaces");
  scan_cmd->add_option("--min-card", sargs.min_card, "Smallest cardinality for --images");
  scan_cmd->add_flag("--survey", sargs.survey, "Coset permutation survey");
  scan_cmd->add_flag("--progress", sargs.progress, "Per-dimension counters on standard error");
  scan_cmd->callback([&] { action = [&](std::ostream& o) { return cmd_scan(cfg, sargs, o, err); }; });

  auto* demo_cmd = app.add_subcommand("aes-demo", "Walk through the AES S-box certificate");
  auto skip_scan = std::make_shared<bool>(false);
  demo_cmd->add_flag("--skip-scan", *skip_scan, "Leave out the full subspace scan");
  demo_cmd->callback([&] { action = [&](std::ostream& o) { return cmd_aes_demo(cfg, *skip_scan, o); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> owned{"invsub"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : owned) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    if (cfg.output.empty()) return action(out);
    std::ostringstream buffer;
    const int code = action(buffer);
    std::ofstream file(cfg.output);
    if (!file) throw Error(ErrorKind::ParseError, "cannot write " + cfg.output);
    file << buffer.str();
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::CapExceeded ? kExitCapExceeded : kExitFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace invsub
