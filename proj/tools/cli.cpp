#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "camshift/cam1d.hpp"
#include "camshift/camzd.hpp"
#include "camshift/error.hpp"
#include "camshift/sft.hpp"

namespace camshift::cli {

namespace {

using nlohmann::json;

struct Cell {
  std::string text;
  bool quoted = false;
};

Cell num(std::uint64_t v) { return {std::to_string(v), false}; }
Cell str(std::string s) { return {std::move(s), true}; }
Cell big(const BigInt& v) { return {v.str(), true}; }
Cell rat(const Rational& v) { return {to_string(v), true}; }
Cell flag(bool b) { return {b ? "true" : "false", false}; }

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << (row[i].quoted ? quote(row[i].text) : row[i].text);
    }
    os << "\n";
  }
  return os.str();
}

Table certificate_table(const std::vector<CertificateReport>& reports) {
  Table t{{"level", "id", "detail", "status", "lhs", "rhs", "margin"}, {}};
  for (const auto& r : reports) {
    for (const auto& row : r.rows()) {
      t.rows.push_back({num(r.level()), str(row.id), str(row.detail), str(std::string(to_string(row.status))),
                        rat(row.lhs), rat(row.rhs), rat(row.margin())});
    }
  }
  return t;
}

// Either family kind, as loaded from a file or freshly built.
struct AnyFamily {
  std::optional<cam1d::Family> one;
  std::optional<zd::Family> many;

  std::vector<CertificateReport> certificates() const {
    std::vector<CertificateReport> out;
    const unsigned top = one ? one->top_level() : many->top_level();
    for (unsigned k = 2; k <= top; ++k) {
      out.push_back(one ? one->level(k).certificate : many->level(k).certificate);
    }
    return out;
  }
  bool certified() const { return one ? one->certified() : many->certified(); }
  json to_json() const { return one ? cam1d::to_json(*one) : zd::to_json(*many); }
};

std::optional<std::uint64_t> env_budget() {
  const char* raw = std::getenv("CAMSHIFT_BUDGET");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used != std::string_view(raw).size() || v == 0) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::invalid_parameter, std::string("CAMSHIFT_BUDGET must be a positive integer, got ") + raw);
  }
}

struct Settings {
  std::string format = "json";
  unsigned jobs = 1;
  std::optional<std::uint64_t> budget;

  std::uint64_t budget_or(std::uint64_t fallback) const {
    if (budget) return *budget;
    if (auto env = env_budget()) return *env;
    return fallback;
  }
  bool csv() const { return format == "csv"; }
};

cam1d::FamilyConfig config_1d(const Settings& s) {
  cam1d::FamilyConfig c;
  c.materialization_budget = s.budget_or(slp::kDefaultMaterializationBudget);
  c.jobs = s.jobs;
  return c;
}

zd::FamilyConfig config_zd(const Settings& s, std::size_t dim) {
  zd::FamilyConfig c;
  c.dim = dim;
  c.cell_budget = s.budget_or(zd::kDefaultCellBudget);
  c.jobs = s.jobs;
  return c;
}

AnyFamily load_family(const std::string& path, const Settings& s) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::invalid_parameter, "cannot open family file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::malformed_input, "family file " + path + ": " + e.what());
  }
  AnyFamily f;
  if (j.is_object() && j.contains("slp")) {
    f.one.emplace(cam1d::family_from_json(j, config_1d(s)));
  } else {
    std::size_t dim = 2;
    if (j.is_object() && j.contains("dim") && j["dim"].is_number_unsigned()) dim = j["dim"].get<std::size_t>();
    f.many.emplace(zd::family_from_json(j, config_zd(s, dim)));
  }
  return f;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  for (const auto& part : split(text, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      if constexpr (std::is_unsigned_v<T>) {
        if (v < 0) throw std::invalid_argument(part);
      }
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      fail(ErrorCode::invalid_parameter, std::string(what) + " must be a comma-separated list of integers");
    }
  }
  return out;
}

sft::Matrix parse_matrix(const std::string& text) {
  try {
    return sft::Matrix::from_json(json::parse(text));
  } catch (const json::exception& e) {
    fail(ErrorCode::malformed_input, std::string("matrix: ") + e.what());
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_input:
      return kMalformed;
    case ErrorCode::budget_exceeded:
    case ErrorCode::search_budget_exceeded:
    case ErrorCode::enumeration_too_large:
    case ErrorCode::pattern_too_long:
    case ErrorCode::no_convergence:
      return kBudget;
    case ErrorCode::reducible_matrix:
      return kViolation;
    default:
      return kUsage;
  }
}

struct Output {
  std::string text;
  int code = kOk;
};

Output emit(const Settings& s, const json& j, const Table& t, int code = kOk) {
  return {s.csv() ? render_csv(t) : j.dump(2) + "\n", code};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Builds and certifies chaotic almost minimal subshifts and checks SFT embedding conditions",
               "camshift"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--format", s.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", s.jobs, "Worker threads for verification rows")->check(CLI::PositiveNumber);
  app.add_option("--budget", s.budget, "Materialization budget in symbols or cells (overrides CAMSHIFT_BUDGET)")
      ->check(CLI::PositiveNumber);

  std::string family_path;
  auto* build = app.add_subcommand("build", "Choose parameters, build and certify a family");
  std::size_t dim = 1;
  unsigned levels = 0;
  std::string eps = "default";
  std::string out_path;
  build->add_option("--dim", dim, "Lattice dimension")->check(CLI::PositiveNumber);
  build->add_option("--levels", levels, "Target level K (at least 2)")->required();
  build->add_option("--eps", eps, "Frequency scheme: default or geometric:<c>:<r>");
  build->add_option("--out", out_path, "Write the family file here instead of stdout");

  auto* certify = app.add_subcommand("certify", "Rebuild a family file and print its certificates");
  certify->add_option("--family", family_path, "Family file")->required();

  auto* verify = app.add_subcommand("verify", "Scan all ordered pairs of distinct level words");
  unsigned level = 2;
  verify->add_option("--family", family_path, "Family file")->required();
  verify->add_option("--level", level, "Level k");

  auto* window = app.add_subcommand("window", "Extract a window of the transitive point");
  std::string start = "1";
  std::string len = "1";
  std::string side = "a";
  window->add_option("--family", family_path, "Family file")->required();
  window->add_option("--start", start, "First coordinate (comma list in dimension >= 2)");
  window->add_option("--len", len, "Length (comma list of sides in dimension >= 2)");
  window->add_option("--side", side, "Which point: a or b")->check(CLI::IsMember({"a", "b"}));

  auto* parse = app.add_subcommand("parse", "Parse an aligned window into level words");
  std::optional<std::string> parse_start;
  std::optional<std::size_t> parse_len;
  std::optional<unsigned> extent;
  parse->add_option("--family", family_path, "Family file")->required();
  parse->add_option("--level", level, "Block level k");
  parse->add_option("--start", parse_start, "First coordinate, 1 mod |a_k|");
  parse->add_option("--len", parse_len, "Length, a multiple of |a_k|");
  parse->add_option("--extent", extent, "Parse all of (-|a_m|, |a_m|] (default m = min(top, 3))");

  auto* measure = app.add_subcommand("measure", "Empirical measures of cylinders");
  std::optional<unsigned> measure_k;
  std::optional<std::string> cylinders;
  measure->add_option("--family", family_path, "Family file")->required();
  measure->add_option("--k", measure_k, "Single level (default: every built level)");
  measure->add_option("--cylinders", cylinders, "Comma-separated cylinder words (dimension 1)");

  auto* complexity = app.add_subcommand("complexity", "Factor counts of a central window");
  std::size_t n_max = 16;
  std::size_t length = 4096;
  complexity->add_option("--family", family_path, "Family file")->required();
  complexity->add_option("--n-max", n_max, "Largest factor length")->check(CLI::PositiveNumber);
  complexity->add_option("--length", length, "Window length")->check(CLI::PositiveNumber);

  auto* sft_cmd = app.add_subcommand("sft", "Shift of finite type arithmetic");
  sft_cmd->require_subcommand(1);
  std::string matrix;
  std::uint64_t qn_max = 1;
  std::uint64_t embed_n_max = 12;
  double tolerance = sft::kDefaultTolerance;
  std::uint64_t m = 1;
  std::optional<std::uint64_t> search;
  auto* qn = sft_cmd->add_subcommand("qn", "Least-period counts q_1..q_n");
  qn->add_option("--matrix", matrix, "Matrix as JSON rows")->required();
  qn->add_option("--n", qn_max, "Largest period")->check(CLI::PositiveNumber);
  auto* perron = sft_cmd->add_subcommand("perron", "Perron eigenvalue with exact bounds");
  perron->add_option("--matrix", matrix, "Matrix as JSON rows")->required();
  perron->add_option("--tolerance", tolerance, "Power iteration tolerance")->check(CLI::PositiveNumber);
  auto* embed = sft_cmd->add_subcommand("embed", "Embedding conditions for a tower over the 2-shift");
  embed->add_option("--matrix", matrix, "Matrix as JSON rows")->required();
  embed->add_option("--m", m, "Tower height")->check(CLI::PositiveNumber);
  embed->add_option("--n-max", embed_n_max, "Largest period checked")->check(CLI::PositiveNumber);
  embed->add_option("--tolerance", tolerance, "Power iteration tolerance")->check(CLI::PositiveNumber);
  embed->add_option("--search", search, "Also report the smallest feasible height up to this cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    Output result;
    if (build->parsed()) {
      if (levels < 2) fail(ErrorCode::invalid_parameter, "--levels must be at least 2");
      AnyFamily f;
      if (dim == 1) {
        auto c = config_1d(s);
        c.eps_scheme = eps;
        f.one.emplace(cam1d::build_family(levels, c));
      } else {
        auto c = config_zd(s, dim);
        c.eps_scheme = eps;
        f.many.emplace(zd::build_family(levels, c));
      }
      const int code = f.certified() ? kOk : kViolation;
      const json j = f.to_json();
      if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) fail(ErrorCode::invalid_parameter, "cannot write " + out_path);
        file << j.dump(2) << "\n";
        json summary = {{"family", out_path}, {"certified", f.certified()}, {"params", j["params"]}};
        result = emit(s, summary, certificate_table(f.certificates()), code);
      } else {
        result = emit(s, j, certificate_table(f.certificates()), code);
      }
    } else if (certify->parsed()) {
      const auto f = load_family(family_path, s);
      json reports = json::array();
      for (const auto& r : f.certificates()) reports.push_back(r.to_json());
      result = emit(s, reports, certificate_table(f.certificates()), f.certified() ? kOk : kViolation);
    } else if (verify->parsed()) {
      const auto f = load_family(family_path, s);
      PairReport report;
      json j;
      bool ok = true;
      if (f.one) {
        report = cam1d::verify_distinct_subwords(*f.one, level, s.budget_or(slp::kDefaultMaterializationBudget),
                                                 s.jobs);
        j = report.to_json();
      } else {
        report = zd::verify_distinct_subwords(*f.many, level, s.budget_or(zd::kDefaultCellBudget), s.jobs);
        j = report.to_json();
        if (level >= 2) {
          try {
            const auto mult = zd::multiplicity_check(*f.many, level);
            j["multiplicity"] = mult.to_json();
            ok = mult.holds;
          } catch (const Error& e) {
            if (e.code() != ErrorCode::budget_exceeded) throw;
            j["multiplicity"] = {{"status", "unverifiable at budget"}};
          }
        }
      }
      ok = ok && report.ok();
      std::string summary = std::to_string(report.pairs.size()) + " pairs, " + report.occurrences().str() + " occurrences";
      if (report.scanned() < report.pairs.size()) {
        summary += ", " + std::to_string(report.pairs.size() - report.scanned()) + " certified by inequalities";
      }
      j["summary"] = summary;
      Table t{{"u", "v", "status", "count"}, {}};
      for (const auto& p : report.pairs) {
        t.rows.push_back({str(p.u), str(p.v), str(std::string(to_string(p.status))), big(p.count)});
      }
      result = emit(s, j, t, ok ? kOk : kViolation);
    } else if (window->parsed()) {
      const auto f = load_family(family_path, s);
      const bool side_b = side == "b";
      if (f.one) {
        const auto lengths = parse_list<std::size_t>(len, "--len");
        if (lengths.size() != 1) fail(ErrorCode::invalid_parameter, "--len takes one value in dimension 1");
        BigInt first;
        try {
          first = BigInt(start);
        } catch (const std::exception&) {
          fail(ErrorCode::invalid_parameter, "--start must be an integer");
        }
        const auto word = f.one->transitive_point_window(first, lengths[0], side_b);
        const json j = {{"start", first.str()}, {"len", lengths[0]}, {"side", side}, {"word", to_string(word)}};
        result = emit(s, j, Table{{"start", "len", "side", "word"},
                                  {{big(first), num(lengths[0]), str(side), str(to_string(word))}}});
      } else {
        const auto lower = parse_list<std::int64_t>(start, "--start");
        const auto sizes = parse_list<std::size_t>(len, "--len");
        const auto w = f.many->transitive_config_window(lower, sizes, side_b);
        const json j = {{"lower", lower}, {"sizes", sizes}, {"side", side}, {"array", w.to_json()}};
        // One CSV line per run of cells along the last axis.
        Table t{{"row", "cells"}, {}};
        const std::size_t run_len = w.sides().back();
        std::string bits = w.to_json()["data"].get<std::string>();
        for (std::size_t r = 0; r * run_len < bits.size(); ++r) {
          t.rows.push_back({num(r), str(bits.substr(r * run_len, run_len))});
        }
        result = emit(s, j, t);
      }
    } else if (parse->parsed()) {
      const auto f = load_family(family_path, s);
      if (!f.one) fail(ErrorCode::invalid_parameter, "parse applies to dimension 1 families");
      BigInt first;
      std::size_t span = 0;
      if (parse_start || parse_len) {
        if (!parse_start || !parse_len) fail(ErrorCode::invalid_parameter, "--start and --len go together");
        try {
          first = BigInt(*parse_start);
        } catch (const std::exception&) {
          fail(ErrorCode::invalid_parameter, "--start must be an integer");
        }
        span = *parse_len;
      } else {
        const unsigned ext = extent.value_or(std::min(f.one->top_level(), 3u));
        const BigInt alen = f.one->store().length(f.one->level(ext).a);
        first = 1 - alen;
        span = to_u64(2 * alen, "parse extent");
      }
      const auto p = cam1d::parse_structure(*f.one, level, first, span);
      Table t{{"index", "block", "next_pair"}, {}};
      for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        t.rows.push_back({num(i), str(p.blocks[i]),
                          str(i < p.pairs.size() ? std::string(to_string(p.pairs[i])) : std::string())});
      }
      result = emit(s, p.to_json(), t, p.violations == 0 ? kOk : kViolation);
    } else if (measure->parsed()) {
      const auto f = load_family(family_path, s);
      if (f.one) {
        const unsigned top = f.one->top_level();
        const unsigned lo = measure_k.value_or(2);
        const unsigned hi = measure_k.value_or(top);
        if (lo < 2 || hi > top) fail(ErrorCode::out_of_built_range, "--k must lie in 2.." + std::to_string(top));
        std::vector<Word> words;
        for (const auto& c : split(cylinders.value_or("0,1"), ',')) words.push_back(word_from_string(c));
        json measures = json::array();
        Table t{{"k", "cylinder", "side_a", "side_b"}, {}};
        for (unsigned k = lo; k <= hi; ++k) {
          json row = {{"k", k}, {"cylinders", json::array()}};
          for (const auto& w : words) {
            const Rational a = cam1d::empirical_measure(*f.one, k, false, w);
            const Rational b = cam1d::empirical_measure(*f.one, k, true, w);
            row["cylinders"].push_back({{"word", to_string(w)}, {"a", to_string(a)}, {"b", to_string(b)}});
            t.rows.push_back({num(k), str(to_string(w)), rat(a), rat(b)});
          }
          measures.push_back(std::move(row));
        }
        auto rows = cam1d::measure_report(*f.one, hi);
        std::erase_if(rows, [&](const cam1d::MeasureRow& r) { return r.k < lo; });
        const bool ok = std::all_of(rows.begin(), rows.end(), [](const cam1d::MeasureRow& r) {
          return r.a0_below_third && r.b1_below_third && r.gap_above_third;
        });
        result = emit(s, {{"measures", measures}, {"report", cam1d::to_json(rows)}}, t, ok ? kOk : kViolation);
      } else {
        if (cylinders) fail(ErrorCode::invalid_parameter, "--cylinders applies to dimension 1 families");
        const unsigned top = f.many->top_level();
        const unsigned lo = measure_k.value_or(2);
        const unsigned hi = measure_k.value_or(top);
        if (lo < 2 || hi > top) fail(ErrorCode::out_of_built_range, "--k must lie in 2.." + std::to_string(top));
        auto rows = zd::measure_report(*f.many, hi);
        std::erase_if(rows, [&](const zd::MeasureRow& r) { return r.k < lo; });
        Table t{{"k", "freq_a_1", "freq_a_0", "freq_b_0", "freq_b_1", "bound", "origin_gap"}, {}};
        bool ok = true;
        for (const auto& r : rows) {
          t.rows.push_back({num(r.k), rat(r.a1), rat(r.a0), rat(r.b0), rat(r.b1), rat(r.bound), rat(r.origin_gap)});
          ok = ok && r.a1_below_bound && r.b0_below_bound && r.gap_above_third;
        }
        result = emit(s, {{"report", zd::to_json(rows)}}, t, ok ? kOk : kViolation);
      }
    } else if (complexity->parsed()) {
      const auto f = load_family(family_path, s);
      if (!f.one) fail(ErrorCode::invalid_parameter, "complexity applies to dimension 1 families");
      const auto p = cam1d::complexity_profile(*f.one, n_max, length);
      json j = {{"length", length}, {"p", p}};
      Table t{{"n", "p"}, {}};
      for (std::size_t i = 0; i < p.size(); ++i) t.rows.push_back({num(i + 1), num(p[i])});
      result = emit(s, j, t);
    } else if (qn->parsed()) {
      const auto c = sft::census(parse_matrix(matrix), qn_max);
      Table t{{"n", "q"}, {}};
      for (const auto& [k, q] : c.counts) t.rows.push_back({num(k), big(q)});
      result = emit(s, c.to_json(), t);
    } else if (perron->parsed()) {
      const auto p = sft::perron_eigenvalue(parse_matrix(matrix), tolerance);
      std::ostringstream lambda;
      lambda.precision(17);
      lambda << p.lambda;
      result = emit(s, p.to_json(),
                    Table{{"lambda", "lower", "upper", "residual", "iterations", "periodic"},
                          {{{lambda.str(), false}, rat(p.lower), rat(p.upper), {std::to_string(p.residual), false},
                            num(p.iterations), flag(p.periodic)}}});
    } else if (embed->parsed()) {
      const auto a = parse_matrix(matrix);
      const auto report = sft::embedding_feasibility(a, m, embed_n_max, tolerance);
      json j = report.to_json();
      if (search) {
        const auto best = sft::smallest_feasible_height(a, *search, embed_n_max, tolerance);
        j["smallest_feasible_height"] = best ? json(*best) : json(nullptr);
      }
      Table t{{"m", "entropy", "n", "tower", "target", "pass"}, {}};
      for (const auto& r : report.periodic) {
        t.rows.push_back({num(m), str(std::string(to_string(report.entropy))), num(r.n), big(r.tower),
                          big(r.target), flag(r.pass)});
      }
      result = emit(s, j, t);
    }
    out << result.text;
    return result.code;
  } catch (const Error& e) {
    err << "camshift: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "camshift: budget_exceeded: out of memory\n";
    return kBudget;
  }
}

}  // namespace camshift::cli
