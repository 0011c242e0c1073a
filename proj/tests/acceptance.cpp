// Acceptance suite: one pass/fail line per gate criterion, each run at its
// stated tolerance and runtime budget. Exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rmacode/attack_sim.hpp"
#include "rmacode/auth.hpp"
#include "rmacode/deception.hpp"

using namespace rmacode;

namespace {

struct Harness {
  int criterion = 0;
  std::vector<std::string> failures;
  std::vector<DeceptionReport> all_reports;
  int failed_criteria = 0;

  void check(bool condition, const std::string& what) {
    if (!condition) failures.push_back(what);
  }

  void note_report(const DeceptionReport& report) {
    all_reports.push_back(report);
  }

  void run(int number, const std::string& label, double budget_seconds,
           const std::function<void()>& body) {
    criterion = number;
    failures.clear();
    const auto start = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const std::exception& e) {
      failures.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (budget_seconds > 0 && elapsed > budget_seconds)
      failures.push_back("runtime " + std::to_string(elapsed) +
                         " s exceeds budget " + std::to_string(budget_seconds) +
                         " s");
    char time_buf[32];
    std::snprintf(time_buf, sizeof time_buf, "%.2f", elapsed);
    if (failures.empty()) {
      std::cout << "[PASS] criterion " << number << " (" << time_buf
                << " s): " << label << "\n";
    } else {
      ++failed_criteria;
      std::cout << "[FAIL] criterion " << number << " (" << time_buf
                << " s): " << label << "\n";
      for (const auto& f : failures) std::cout << "       - " << f << "\n";
    }
  }
};

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

// Runs the CLI binary; returns its exit code and captures stdout.
int run_cli(const std::string& args, const std::filesystem::path& dir,
            std::string* stdout_text = nullptr) {
  const std::filesystem::path out_file = dir / "cli_stdout.txt";
  const std::string command = std::string(RMACODE_CLI_PATH) + " " + args +
                              " > " + shell_quote(out_file.string()) +
                              " 2> /dev/null";
  const int raw = std::system(command.c_str());
  if (stdout_text != nullptr) {
    std::ifstream in(out_file, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    *stdout_text = buf.str();
  }
  if (raw == -1) return -1;
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int valid_source_cap(const RmCode& code, int cap) {
  return std::min<int>({static_cast<int>(code.dimension()) - 1,
                        static_cast<int>(code.block_length()) - 1, cap});
}

}  // namespace

int main() {
  Harness h;

  // 1. Toy-example golden test: the 8x4 authentication matrix, and the
  //    definition-level oracle returning P_I = P_S = 1/2 exactly.
  h.run(1, "toy authentication matrix and definition-level oracle", 1.0, [&] {
    const auto code = RmCode::build(2, 1);
    const auto params = SubcodeParams::create(code, 2, 1);
    const auto matrix = authentication_matrix(code, params);
    h.check(matrix.key_count == 8 && matrix.source_count == 4,
            "matrix must be 8x4");
    const std::array<std::array<std::uint32_t, 4>, 8> expected{{
        {0, 1, 1, 0},
        {1, 0, 0, 1},
        {0, 0, 1, 1},
        {1, 1, 0, 0},
        {0, 1, 0, 1},
        {1, 0, 1, 0},
        {0, 0, 0, 0},
        {1, 1, 1, 1},
    }};
    for (std::size_t row = 0; row < 8; ++row)
      for (std::size_t col = 0; col < 4; ++col)
        h.check(matrix.at(row, col) == expected[row][col],
                "matrix cell (" + std::to_string(row) + "," +
                    std::to_string(col) + ")");
    const auto report = p_deception_from_definitions(code, params);
    h.note_report(report);
    h.check(report.p_impersonation == Rational(1, 2), "P_I = 1/2 exactly");
    h.check(report.p_substitution == Rational(1, 2), "P_S = 1/2 exactly");
  });

  // 2. Closed-form reproduction of the published M=4, l=3, r=1 table, with
  //    the m=5 entry pinned to the computed exact value 1920/4960 = 0.3871
  //    (a published figure of 0.3817 looks like a digit transposition and is
  //    deliberately not matched).
  h.run(2, "closed-form P_I and P_S across m = 4..8", 5.0, [&] {
    const std::vector<std::pair<int, std::string>> table{{4, "0.4000"},
                                                         {5, "0.3871"},
                                                         {6, "0.3810"},
                                                         {7, "0.3780"},
                                                         {8, "0.3765"}};
    for (const auto& [m, dec4] : table) {
      const auto code = RmCode::build(m, 1);
      const auto report =
          p_substitution_closed_form(code, SubcodeParams::create(code, 4, 3));
      h.note_report(report);
      h.check(report.p_impersonation.to_decimal(4) == "0.1250",
              "m=" + std::to_string(m) + ": P_I renders 0.1250");
      h.check(report.p_substitution.to_decimal(4) == dec4,
              "m=" + std::to_string(m) + ": P_S renders " + dec4 + ", got " +
                  report.p_substitution.to_decimal(4));
    }
    const auto code5 = RmCode::build(5, 1);
    const auto report5 =
        p_substitution_closed_form(code5, SubcodeParams::create(code5, 4, 3));
    h.check(report5.p_substitution == Rational(1920, 4960),
            "m=5: exact value is 1920/4960");
    h.check(report5.p_substitution.to_decimal(4) != "0.3817",
            "m=5: must not reproduce the transposed published figure");
  });

  // 3. Oracle ladder: definition = simplified brute force = closed form for
  //    every m <= 4, r in {1,2}, valid M <= 5, l <= min(M,3).
  h.run(3, "oracle ladder agreement over the small-parameter sweep", 60.0, [&] {
    int configs = 0;
    for (int m = 2; m <= 4; ++m) {
      for (int r : {1, 2}) {
        if (r > m) continue;
        const auto code = RmCode::build(m, r);
        for (int M = 1; M <= valid_source_cap(code, 5); ++M) {
          for (int l = 1; l <= std::min(M, 3); ++l) {
            const auto params = SubcodeParams::create(code, M, l);
            const auto defn = p_deception_from_definitions(code, params);
            const auto brute = p_substitution_bruteforce(code, params);
            h.note_report(defn);
            h.note_report(brute);
            const std::string tag = "m=" + std::to_string(m) +
                                    " r=" + std::to_string(r) +
                                    " M=" + std::to_string(M) +
                                    " l=" + std::to_string(l);
            h.check(defn.p_substitution == brute.p_substitution,
                    tag + ": definition vs brute force");
            h.check(defn.p_impersonation == p_impersonation(l),
                    tag + ": definition P_I = 1/2^l");
            try {
              const auto closed = p_substitution_closed_form(code, params);
              h.note_report(closed);
              h.check(closed.p_substitution == brute.p_substitution,
                      tag + ": closed form vs brute force");
            } catch (const NoWitnessError&) {
              // closed form skipped; the first two agreeing suffices
            }
            ++configs;
          }
        }
      }
    }
    h.check(configs >= 48, "sweep must cover the full parameter grid");
  });

  // 4. Brute force at scale: m=8, r=1, M=4, l=3 over C(256,3) subsets.
  h.run(4, "brute-force oracle at m=8 equals the closed form", 120.0, [&] {
    const auto code = RmCode::build(8, 1);
    const auto params = SubcodeParams::create(code, 4, 3);
    const auto brute = p_substitution_bruteforce(code, params);
    const auto closed = p_substitution_closed_form(code, params);
    h.note_report(brute);
    h.note_report(closed);
    h.check(brute.p_substitution == Rational(1040384, 2763520),
            "brute force equals 1040384/2763520");
    h.check(brute.p_substitution == closed.p_substitution,
            "brute force equals the closed form");
  });

  // 5. Structural property suites (>= 100 randomized cases or exhaustive).
  h.run(5, "linearity, complement, frozen-bit, tag-counting property suites", 60.0,
        [&] {
          // linearity of source encoding
          SplitMix64 rng(1001);
          int linearity_cases = 0;
          for (const auto& [m, r] : std::vector<std::pair<int, int>>{
                   {2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {5, 1}, {5, 2}}) {
            const auto code = RmCode::build(m, r);
            for (int M = 1; M <= valid_source_cap(code, 6); ++M) {
              const auto params = SubcodeParams::create(code, M, 1);
              for (int t = 0; t < 10; ++t) {
                const BitVector a = rng.bits(M);
                const BitVector b = rng.bits(M);
                h.check((encode_source(code, params, a) ^
                         encode_source(code, params, b)) ==
                            encode_source(code, params, a ^ b),
                        "linearity");
                ++linearity_cases;
              }
            }
          }
          h.check(linearity_cases >= 100, "at least 100 linearity cases");

          // complement: inputs differing only in the last entry
          int complement_cases = 0;
          for (const auto& [m, r] : std::vector<std::pair<int, int>>{
                   {2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {5, 2}}) {
            const auto code = RmCode::build(m, r);
            const auto ones =
                BitVector::prefix(code.block_length(), code.block_length());
            for (int t = 0; t < 20; ++t) {
              BitVector u = rng.bits(code.dimension());
              BitVector u_prime = u;
              u_prime.set(code.dimension() - 1,
                          !u.get(code.dimension() - 1));
              h.check((code.encode(u) ^ code.encode(u_prime)) == ones,
                      "complement");
              ++complement_cases;
            }
          }
          h.check(complement_cases >= 100, "at least 100 complement cases");

          // frozen bit: P_S = 1 for the full code, < 1 for every sub-code
          for (const auto& [m, r] : std::vector<std::pair<int, int>>{
                   {2, 1}, {3, 1}, {3, 2}, {4, 1}}) {
            const auto code = RmCode::build(m, r);
            const auto unfrozen = p_substitution_full_code(code, 1);
            h.check(unfrozen.p_substitution == Rational(1, 1),
                    "unfrozen P_S = 1");
            for (int M = 1; M <= valid_source_cap(code, 5); ++M) {
              for (int l = 1; l <= std::min(M, 3); ++l) {
                const auto frozen = p_substitution_bruteforce(
                    code, SubcodeParams::create(code, M, l));
                h.note_report(frozen);
                h.check(frozen.p_substitution < Rational(1, 1),
                        "frozen P_S < 1");
              }
            }
          }

          // unique prefix-form tags with binomial counts
          for (int n : {8, 16, 32}) {
            for (int l : {1, 2, 3}) {
              for (int w = 1; w < n; ++w) {
                const auto dist = tag_distribution(BitVector::prefix(n, w), l);
                const auto [lo, hi] = tag_weight_range(w, n, l);
                for (std::size_t v = 0; v < dist.value_space(); ++v) {
                  if (dist.count(v) == 0) continue;
                  const int wt = std::popcount(v);
                  h.check(v == ((std::uint64_t{1} << wt) - 1) << (l - wt),
                          "prefix codeword tags are prefix-form");
                  h.check(wt >= lo && wt <= hi, "tag weight within range");
                  h.check(BigInt(dist.count(v)) ==
                              count_tags_by_weight(w, n, l, wt),
                          "tag count C(w,wt)C(n-w,l-wt)");
                }
              }
            }
          }

          // weight range vs the literal four cases
          for (int n : {4, 8, 16, 32}) {
            for (int w = 1; w < n; ++w) {
              for (int l = 1; l <= n; ++l) {
                int lo, hi;
                if (w >= l && l >= n - w) {
                  hi = l;
                  lo = l - (n - w);
                } else if (w < l && l >= n - w) {
                  hi = w;
                  lo = l - (n - w);
                } else if (w >= l) {
                  hi = l;
                  lo = 0;
                } else {
                  hi = w;
                  lo = 0;
                }
                h.check(tag_weight_range(w, n, l) == std::pair{lo, hi},
                        "weight range case split");
              }
            }
          }

          // prefix dominance, exhaustive over the sub-code for m <= 5
          for (const auto& [m, r] : std::vector<std::pair<int, int>>{
                   {3, 1}, {3, 2}, {4, 1}, {4, 2}, {5, 1}, {5, 2}}) {
            const auto code = RmCode::build(m, r);
            const int M = valid_source_cap(code, 6);
            for (int l = 1; l <= std::min(M, 3); ++l) {
              const auto params = SubcodeParams::create(code, M, l);
              std::vector<BitVector> codewords;
              for (std::uint64_t ordinal = 1;
                   ordinal < (std::uint64_t{1} << M); ++ordinal)
                codewords.push_back(encode_source(
                    code, params, source_from_ordinal(ordinal, M)));
              for (std::size_t w : prefix_codeword_weights(code, params)) {
                const std::uint64_t prefix_max =
                    tag_distribution(
                        BitVector::prefix(code.block_length(), w), l)
                        .max_count();
                for (const auto& c : codewords)
                  if (c.weight() == w)
                    h.check(tag_distribution(c, l).max_count() <= prefix_max,
                            "prefix dominance");
              }
            }
          }

          // reversal symmetry of prefix-form tag distributions, m <= 5
          for (int m = 2; m <= 5; ++m) {
            const std::size_t n = std::size_t{1} << m;
            for (int l : {1, 2, 3}) {
              if (static_cast<std::size_t>(l) >= n) continue;
              for (std::size_t w = 1; w < n; ++w) {
                h.check(tag_distribution(BitVector::prefix(n, w), l)
                                .max_count() ==
                            tag_distribution(BitVector::prefix(n, n - w), l)
                                .max_count(),
                        "reversal symmetry");
              }
            }
          }
        });

  // 6. Monte-Carlo confirmation at fixed seeds, 1e5 trials, |z| < 4.
  h.run(6, "seeded Monte-Carlo runs match the exact rates", 30.0, [&] {
    const auto toy = AuthConfig::create(2, 1, 2, 1);
    const auto toy_imp = run_impersonation(toy, 100000, 11);
    h.check(std::abs(toy_imp.z_score) < 4.0, "toy impersonation |z| < 4");
    const auto toy_strategy = best_substitution_strategy(toy.code, toy.params);
    const auto toy_sub = run_substitution(toy, toy_strategy, 100000, 11);
    h.check(toy_sub.reference_rate == Rational(1, 2),
            "toy optimal strategy rate 1/2");
    h.check(std::abs(toy_sub.z_score) < 4.0, "toy substitution |z| < 4");

    const auto cfg = AuthConfig::create(4, 1, 4, 3);
    const auto imp = run_impersonation(cfg, 100000, 7);
    h.check(imp.reference_rate == Rational(1, 8), "impersonation rate 1/8");
    h.check(std::abs(imp.z_score) < 4.0, "m=4 impersonation |z| < 4");
    const auto strategy = best_substitution_strategy(cfg.code, cfg.params);
    const auto sub = run_substitution(cfg, strategy, 100000, 7);
    h.check(sub.reference_rate == Rational(2, 5), "optimal strategy rate 2/5");
    h.check(std::abs(sub.z_score) < 4.0, "m=4 substitution |z| < 4");
  });

  // 7. Bound invariant across every report emitted above.
  h.run(7, "every report satisfies P_S >= P_I = 1/2^l exactly", 0, [&] {
    h.check(!h.all_reports.empty(), "reports were collected");
    for (const auto& report : h.all_reports) {
      h.check(report.p_impersonation ==
                  Rational(1, BigInt(1) << report.tag_len),
              "P_I = 1/2^l");
      h.check(report.p_substitution >= report.p_impersonation, "P_S >= P_I");
    }
  });

  // 8. Round-trips and determinism, including the CLI surface.
  h.run(8, "wire round-trips, CLI round-trips, byte-identical reruns", 120.0,
        [&] {
          // 1e4 random messages across several configurations
          SplitMix64 rng(321);
          const std::vector<std::array<int, 4>> shapes{
              {2, 1, 2, 1}, {3, 2, 5, 3}, {4, 1, 4, 3}, {5, 1, 4, 2}};
          for (const auto& [m, r, M, l] : shapes) {
            const auto config = AuthConfig::create(m, r, M, l);
            for (int t = 0; t < 2500; ++t) {
              const Message msg{rng.bits(M), rng.bits(l)};
              const Message back = decode_message(config, encode_message(msg));
              h.check(back.source == msg.source && back.tag == msg.tag,
                      "wire round-trip");
            }
          }

          // CLI round-trips in a scratch directory
          char tmpl[] = "/tmp/rmacode_accept_XXXXXX";
          const char* tmp = mkdtemp(tmpl);
          h.check(tmp != nullptr, "scratch directory");
          if (tmp == nullptr) return;
          const std::filesystem::path dir(tmp);
          const std::string base = "--m 4 --r 1 --M 4 --l 3";
          const auto key_path = (dir / "key.txt").string();

          // keygen determinism: same seed, byte-identical files
          h.check(run_cli(base + " keygen --seed 42 --out " +
                              shell_quote(key_path),
                          dir) == 0,
                  "keygen exits 0");
          const auto key_path2 = (dir / "key2.txt").string();
          h.check(run_cli(base + " keygen --seed 42 --out " +
                              shell_quote(key_path2),
                          dir) == 0,
                  "second keygen exits 0");
          h.check(read_file(key_path) == read_file(key_path2),
                  "keygen is byte-identical for equal seeds");

          // tag then verify: accept
          std::string message_hex;
          h.check(run_cli("tag --key " + shell_quote(key_path) +
                              " --source 05",
                          dir, &message_hex) == 0,
                  "tag exits 0");
          while (!message_hex.empty() && message_hex.back() == '\n')
            message_hex.pop_back();
          h.check(message_hex.size() == 2, "message hex is one byte");
          h.check(run_cli("verify --key " + shell_quote(key_path) +
                              " --message " + message_hex,
                          dir) == 0,
                  "verify accepts the tagged message");

          // flip the last tag bit: reject with exit 1
          const int flipped = std::stoi(message_hex, nullptr, 16) ^ 1;
          char flipped_hex[3];
          std::snprintf(flipped_hex, sizeof flipped_hex, "%02x", flipped);
          h.check(run_cli("verify --key " + shell_quote(key_path) +
                              " --message " + std::string(flipped_hex),
                          dir) == 1,
                  "verify rejects a flipped tag bit with exit 1");

          // malformed input: exit 2
          h.check(run_cli("verify --key " + shell_quote(key_path) +
                              " --message zz",
                          dir) == 2,
                  "malformed message hex exits 2");
          h.check(run_cli(base + " simulate --attack substitution --delta-s 0",
                          dir) == 2,
                  "zero/short substitution offset exits 2");
          h.check(run_cli(base +
                              " simulate --attack substitution --delta-s 00 "
                              "--delta-t 00",
                          dir) == 2,
                  "zero substitution offset exits 2");

          // guardrail: exit 3
          h.check(run_cli("--m 8 --r 1 --M 4 --l 3 analyze --method definition",
                          dir) == 3,
                  "definition method beyond the key guardrail exits 3");

          // analyze determinism and the m=5 sweep annotation
          std::string sweep1, sweep2;
          h.check(run_cli("--r 1 --M 4 --l 3 analyze --method closed --sweep "
                          "m=4..8",
                          dir, &sweep1) == 0,
                  "sweep exits 0");
          h.check(run_cli("--r 1 --M 4 --l 3 analyze --method closed --sweep "
                          "m=4..8",
                          dir, &sweep2) == 0,
                  "second sweep exits 0");
          h.check(sweep1 == sweep2, "sweep output is byte-identical");
          h.check(sweep1.find("0.3871") != std::string::npos,
                  "sweep shows the computed m=5 value");
          h.check(sweep1.find("transposition") != std::string::npos,
                  "sweep flags the published m=5 figure");
          int rows = 0;
          for (std::istringstream lines(sweep1); std::getline(lines, sweep2);)
            if (sweep2.find("closed_form") != std::string::npos) ++rows;
          h.check(rows == 5, "sweep emits five closed-form rows");

          // simulate determinism
          std::string sim1, sim2;
          h.check(run_cli(base + " simulate --attack impersonation --trials "
                                 "20000 --seed 9",
                          dir, &sim1) == 0,
                  "simulate exits 0");
          h.check(run_cli(base + " simulate --attack impersonation --trials "
                                 "20000 --seed 9",
                          dir, &sim2) == 0,
                  "second simulate exits 0");
          h.check(sim1 == sim2, "simulate output is byte-identical");

          // the toy authentication matrix through the CLI
          std::string csv;
          h.check(run_cli("--m 2 --r 1 --M 2 --l 1 authmatrix", dir, &csv) == 0,
                  "authmatrix exits 0");
          h.check(csv ==
                      "k1,k2,0,1,2,3\n"
                      "1000,0,0,1,1,0\n"
                      "1000,1,1,0,0,1\n"
                      "0100,0,0,0,1,1\n"
                      "0100,1,1,1,0,0\n"
                      "0010,0,0,1,0,1\n"
                      "0010,1,1,0,1,0\n"
                      "0001,0,0,0,0,0\n"
                      "0001,1,1,1,1,1\n",
                  "authmatrix CSV matches the toy table");

          std::filesystem::remove_all(dir);
        });

  std::cout << (h.failed_criteria == 0
                    ? "RESULT: all acceptance criteria passed\n"
                    : "RESULT: " + std::to_string(h.failed_criteria) +
                          " criteria failed\n");
  return h.failed_criteria == 0 ? 0 : 1;
}
