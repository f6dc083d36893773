// squarerun: generate inputs, detect squares, compute runs, benchmark.
//
// Exit codes: squares returns 0 for square-free input, 1 when a square was
// found; every command returns 2 on usage or input errors; bench returns 3
// when a lower-bound assertion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "squarerun/squarerun.hpp"

namespace {

using namespace squarerun;

constexpr const char* kReportTag = "# squarerun-report v1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double budget_c_from_env() {
  const char* v = std::getenv("SQUARERUN_BUDGET_C");
  if (!v || !*v) return kDefaultBudgetC;
  char* end = nullptr;
  const double c = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(c > 0)) throw UsageError("SQUARERUN_BUDGET_C must be a positive number");
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// "1024", "2^10", "2^10..2^18" (powers of two), comma separated.
std::vector<Index> parse_sizes(const std::string& text) {
  auto one = [](const std::string& tok) -> Index {
    const auto caret = tok.find('^');
    try {
      if (caret == std::string::npos) return std::stoll(tok);
      const Index base = std::stoll(tok.substr(0, caret));
      const Index exp = std::stoll(tok.substr(caret + 1));
      if (exp < 0 || exp > 40) throw UsageError("exponent out of range in '" + tok + "'");
      Index v = 1;
      for (Index k = 0; k < exp; ++k) v *= base;
      return v;
    } catch (const std::logic_error&) {
      throw UsageError("bad size '" + tok + "'");
    }
  };
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(one(item));
      continue;
    }
    const Index lo = one(item.substr(0, dots));
    const Index hi = one(item.substr(dots + 2));
    if (lo < 1 || hi < lo) throw UsageError("bad range '" + item + "'");
    for (Index v = lo; v <= hi; v *= 2) out.push_back(v);
  }
  for (Index v : out) {
    if (v < 1) throw UsageError("sizes must be positive");
  }
  if (out.empty()) throw UsageError("empty size list");
  return out;
}

std::vector<Token> generate(const std::string& kind, Index n, Index sigma, std::uint64_t seed, Index period) {
  if (kind == "tm3") return ternary_thue_morse(n);
  if (kind == "random") return random_string(n, sigma, seed);
  if (kind == "unary") return unary(n);
  if (kind == "periodic") return periodic(n, period > 0 ? period : sigma);
  if (kind == "fib") return fibonacci_word(n);
  if (kind == "blocks") return square_free_blocks(n, sigma, seed);
  throw UsageError("unknown kind '" + kind + "'");
}

// Input used by the upper suite: ternary Thue-Morse for sigma = 3, random otherwise.
std::vector<Token> bench_input(Index n, Index sigma, std::uint64_t seed) {
  return sigma == 3 ? ternary_thue_morse(n) : random_string(n, sigma, seed);
}

struct BenchRow {
  std::string text;
  bool ok = true;
};

std::vector<BenchRow> bench_cell(const std::string& suite, Index n, Index sigma, std::uint64_t seed, double c) {
  std::vector<BenchRow> rows;
  auto emit = [&](const std::string& algo, Index neg, Index merging, double extra, const std::string& tail,
                  bool ok) {
    std::ostringstream os;
    os << suite << ',' << n << ',' << sigma << ',' << algo << ',' << neg << ',' << merging << ','
       << static_cast<double>(neg + merging) / static_cast<double>(n) << ',' << extra << ',' << tail << ','
       << (ok ? 1 : 0);
    rows.push_back({os.str(), ok});
  };

  if (suite == "upper") {
    const auto tokens = bench_input(n, sigma, seed);
    {
      auto s = EqString::from_symbols(tokens);
      const auto t0 = std::chrono::steady_clock::now();
      DetectConfig cfg;
      cfg.budget_c = c;
      const auto r = detect(s, cfg);
      emit("phased", r.report.stats.negative, r.report.stats.positive_merging, seconds_since(t0),
           r.report.fallback_used ? "fallback" : "", true);
    }
    {
      auto s = EqString::from_symbols(tokens);
      const auto t0 = std::chrono::steady_clock::now();
      RunsConfig cfg;
      cfg.budget_c = c;
      const auto r = compute_runs(s, cfg);
      emit("runs", r.report.stats.negative, r.report.stats.positive_merging, seconds_since(t0),
           r.report.fallback_used ? "fallback" : "", true);
    }
    return rows;
  }

  if (suite == "lower-square") {
    const double bound = static_cast<double>(n) * std::log(static_cast<double>(sigma)) - 3.6 * static_cast<double>(n);
    for (const std::string algo : {"phased", "ml"}) {
      auto g = std::make_shared<ConflictGraph>(AdversaryMode::Square, n, sigma);
      EqString s(g);
      DetectConfig cfg;
      cfg.budget_c = c;
      const auto found = algo == "phased" ? detect(s, cfg).square : main_lorentz_square(s, s.whole());
      const Index answers = g->answered();
      const bool ok = !found && static_cast<double>(answers) >= bound;
      emit(algo, s.stats().negative, s.stats().positive_merging, bound, std::to_string(answers), ok);
    }
    return rows;
  }

  if (suite == "lower-alpha") {
    const Index limit = n * sigma / 8;
    for (const std::string algo : {"scan", "random", "phased"}) {
      auto g = std::make_shared<ConflictGraph>(AdversaryMode::Alphabet, n, sigma);
      Index broke = 0;
      g->set_observer([&](const QueryRecord&) {
        if (broke == 0 && 2 * g->large_distinct() < n) broke = g->answered();
      });
      EqString s(g);
      if (algo == "scan") {
        strategy_scan(s);
      } else if (algo == "random") {
        strategy_random_pairs(s, 2 * limit, seed);
      } else {
        g->set_query_limit(2 * limit);
        try {
          DetectConfig cfg;
          cfg.budget_c = c;
          detect(s, cfg);
        } catch (const QueryLimitReached&) {
        }
      }
      // A strategy that stops before breaking ambiguity keeps it throughout.
      const bool ok = broke == 0 || broke > limit;
      emit(algo, s.stats().negative, s.stats().positive_merging, static_cast<double>(limit),
           std::to_string(broke), ok);
    }
    return rows;
  }
  throw UsageError("unknown suite '" + suite + "'");
}

int cmd_gen(const std::string& kind, Index n, Index sigma, std::uint64_t seed, Index period,
            const std::string& out) {
  const auto tokens = generate(kind, n, sigma, seed, period);
  if (out.empty() || out == "-") {
    format_tokens(std::cout, tokens);
  } else {
    write_tokens(out, tokens);
  }
  return 0;
}

int cmd_squares(const std::string& in, bool bytes, const std::string& algo, std::optional<Index> sigma) {
  if (algo == "simple" && !sigma) throw UsageError("--algo simple requires --sigma");
  if (algo != "brute" && algo != "ml" && algo != "simple" && algo != "phased") {
    throw UsageError("unknown algo '" + algo + "'");
  }
  const auto tokens = read_tokens(in, bytes);
  auto s = EqString::from_symbols(tokens);
  const double c = budget_c_from_env();
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<Square> q;
  if (algo == "brute") {
    const auto all = brute_squares(s, s.whole());
    if (!all.empty()) q = all.front();
  } else if (algo == "ml") {
    q = main_lorentz_square(s, s.whole());
  } else if (algo == "simple") {
    q = detect_simple(s, *sigma);
  } else {
    DetectConfig cfg;
    cfg.budget_c = c;
    q = detect(s, cfg).square;
  }
  const double secs = seconds_since(t0);
  std::cout << kReportTag << '\n'
            << "algo,n,found,witness_s,witness_half,comparisons_negative,comparisons_merging,seconds\n"
            << algo << ',' << s.size() << ',' << (q ? 1 : 0) << ',' << (q ? q->s : 0) << ','
            << (q ? q->half : 0) << ',' << s.stats().negative << ',' << s.stats().positive_merging << ','
            << secs << '\n';
  return q ? 1 : 0;
}

int cmd_runs(const std::string& in, bool bytes, const std::string& algo, bool report_csv) {
  if (algo != "brute" && algo != "dc" && algo != "phased") throw UsageError("unknown algo '" + algo + "'");
  const auto tokens = read_tokens(in, bytes);
  auto s = EqString::from_symbols(tokens);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Run> runs;
  if (algo == "brute") {
    runs = brute_runs(s, s.whole());
  } else if (algo == "dc") {
    runs = divide_conquer_runs(s, s.whole());
  } else {
    RunsConfig cfg;
    cfg.budget_c = budget_c_from_env();
    runs = compute_runs(s, cfg).runs;
  }
  const double secs = seconds_since(t0);
  write_runs(std::cout, runs);
  if (report_csv) {
    std::cerr << kReportTag << '\n'
              << "algo,n,runs,comparisons_negative,comparisons_merging,seconds\n"
              << algo << ',' << s.size() << ',' << runs.size() << ',' << s.stats().negative << ','
              << s.stats().positive_merging << ',' << secs << '\n';
  }
  return 0;
}

int cmd_bench(const std::string& suite, const std::string& sizes_text, const std::string& sigmas_text,
              std::uint64_t seed, const std::string& csv, unsigned jobs) {
  const auto sizes = parse_sizes(sizes_text);
  const auto sigmas = parse_sizes(sigmas_text);
  const double c = budget_c_from_env();
  struct Cell {
    Index n;
    Index sigma;
  };
  std::vector<Cell> cells;
  for (Index n : sizes) {
    for (Index sg : sigmas) cells.push_back({n, sg});
  }
  // Validate up front so a bad cell is a usage error, not a worker crash.
  for (const auto& cell : cells) {
    if (suite == "lower-square" && (cell.sigma < 8 || cell.sigma % 4 != 0 || cell.sigma > cell.n)) {
      throw UsageError("lower-square needs 8 <= sigma <= n, sigma divisible by 4");
    }
    if (suite == "lower-alpha" && (cell.sigma < 2 || 2 * cell.sigma >= cell.n)) {
      throw UsageError("lower-alpha needs 2 <= sigma < n/2");
    }
    if (suite == "upper" && cell.sigma < 1) throw UsageError("sigma must be positive");
    if (suite != "upper" && suite != "lower-square" && suite != "lower-alpha") {
      throw UsageError("unknown suite '" + suite + "'");
    }
  }

  std::vector<std::vector<BenchRow>> results(cells.size());
  std::vector<std::string> errors(cells.size());
  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t k = 0;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next == cells.size()) return;
        k = next++;
      }
      try {
        results[k] = bench_cell(suite, cells[k].n, cells[k].sigma, seed, c);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ofstream file;
  if (!csv.empty() && csv != "-") {
    file.open(csv);
    if (!file) throw UsageError("cannot write " + csv);
  }
  std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  out << kReportTag << '\n' << "suite,n,sigma,algo,comparisons_negative,comparisons_merging,ratio,extra,detail,ok\n";
  bool all_ok = true;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (!errors[k].empty()) {
      std::cerr << "error in cell n=" << cells[k].n << " sigma=" << cells[k].sigma << ": " << errors[k] << '\n';
      return 2;
    }
    for (const auto& row : results[k]) {
      out << row.text << '\n';
      if (!row.ok) {
        all_ok = false;
        std::cerr << "assertion failed: " << row.text << '\n';
      }
    }
  }
  return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square detection and runs over general alphabets"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Write a token file");
  std::string kind;
  Index n = 0;
  Index sigma = 2;
  std::uint64_t seed = 1;
  Index period = 0;
  std::string out;
  gen->add_option("kind", kind, "tm3, random, unary, periodic, fib or blocks")->required();
  gen->add_option("--n", n, "Length")->required();
  gen->add_option("--sigma", sigma, "Alphabet size (random, blocks; default period)");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--period", period, "Period for periodic");
  gen->add_option("-o,--out", out, "Output path (default stdout)");

  auto* squares = app.add_subcommand("squares", "Test an input for squares");
  std::string in;
  std::string algo = "phased";
  std::optional<Index> known_sigma;
  bool bytes = false;
  squares->add_option("input", in, "Token file")->required();
  squares->add_option("--algo", algo, "brute, ml, simple or phased");
  squares->add_option("--sigma", known_sigma, "Alphabet size (simple)");
  squares->add_flag("--bytes", bytes, "Read the file as raw bytes");

  auto* runs = app.add_subcommand("runs", "List all runs");
  std::string runs_algo = "phased";
  bool quiet = false;
  runs->add_option("input", in, "Token file")->required();
  runs->add_option("--algo", runs_algo, "brute, dc or phased");
  runs->add_flag("--bytes", bytes, "Read the file as raw bytes");
  runs->add_flag("--quiet", quiet, "Suppress the report row on stderr");

  auto* bench = app.add_subcommand("bench", "Benchmark grids");
  std::string suite;
  std::string sizes = "2^10..2^14";
  std::string sigmas = "3";
  std::string csv;
  unsigned jobs = 1;
  bench->add_option("--suite", suite, "upper, lower-alpha or lower-square")->required();
  bench->add_option("--sizes", sizes, "e.g. 1024,4096 or 2^10..2^18");
  bench->add_option("--sigmas", sigmas, "e.g. 2,4,16");
  bench->add_option("--seed", seed, "Random seed");
  bench->add_option("--csv", csv, "Output path (default stdout)");
  bench->add_option("--jobs", jobs, "Parallel grid cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_gen(kind, n, sigma, seed, period, out);
    if (*squares) return cmd_squares(in, bytes, algo, known_sigma);
    if (*runs) return cmd_runs(in, bytes, runs_algo, !quiet);
    if (*bench) return cmd_bench(suite, sizes, sigmas, seed, csv, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
