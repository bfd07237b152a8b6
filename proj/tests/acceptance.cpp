// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "recursion_oracle.hpp"
#include "schoenberg/schoenberg.hpp"

#ifndef SCHOENBERG_CLI_PATH
#error "SCHOENBERG_CLI_PATH must point at the built command-line tool"
#endif

using namespace schoenberg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::ostringstream line;
  line << (o.pass ? "PASS" : "FAIL") << " " << id << " " << title << " [" << o.detail;
  line.precision(2);
  line << std::fixed << "; " << secs << " s]";
  std::cout << line.str() << std::endl;
}

Outcome weights_match_recursion(Parity parity) {
  oracle::SymbolicRecursion oracle(parity == Parity::odd_target ? 1 : 2);
  int rows = 0;
  for (int n = 0; n <= 40; ++n)
    for (int k = 1; k <= 8; ++k) {
      if (walk_weights(parity, n, k).weights != oracle.row(n, k) || !oracle.row_support_ok(n, k))
        return {false, "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k)};
      ++rows;
    }
  return {true, std::to_string(rows) + " rows identical"};
}

ExactSeq random_exact_normalized(int d, std::size_t n_max, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(0, 1000);
  std::vector<Rational> v(n_max + 1);
  Rational total = 0;
  for (auto& x : v) total += (x = dist(rng));
  for (auto& x : v) x /= total;
  return ExactSeq(d, std::move(v));
}

int run_command(const std::string& args, const fs::path& out_file) {
  const std::string cmd = std::string("\"") + SCHOENBERG_CLI_PATH + "\" " + args + " > \"" + out_file.string() +
                          "\" 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;

  report(1, "odd-target weights equal the symbolic recursion from d=1 (n<=40, k<=8)",
         [] { return weights_match_recursion(Parity::odd_target); });

  report(2, "even-target weights equal the symbolic recursion from d=2 (n<=40, k<=8)",
         [] { return weights_match_recursion(Parity::even_target); });

  report(3, "odd weight rows sum to 1/2 at n=0 and 0 for 1<=n<=40 (k<=10)", []() -> Outcome {
    for (int n = 0; n <= 40; ++n)
      for (int k = 1; k <= 10; ++k)
        if (weight_row_sum(odd_weights(n, k)) != (n == 0 ? Rational(1, 2) : Rational(0)))
          return {false, "n=" + std::to_string(n) + " k=" + std::to_string(k)};
    return {true, "410 rows exact"};
  });

  report(4, "Frisch identity for 0<=k<=12, 1<=c<=b<=12", []() -> Outcome {
    int cases = 0;
    for (int k = 0; k <= 12; ++k)
      for (int b = 1; b <= 12; ++b)
        for (int c = 1; c <= b; ++c) {
          const auto [lhs, rhs] = frisch_identity_sides(k, b, c);
          if (lhs != rhs) return {false, "k=" + std::to_string(k) + " b=" + std::to_string(b) + " c=" + std::to_string(c)};
          ++cases;
        }
    return {true, std::to_string(cases) + " cases exact"};
  });

  report(5, "k=4 weights equal the quartic polynomials times 1/1680 (n=1..20)", []() -> Outcome {
    const Rational kappa(1, 1680);
    for (int n = 1; n <= 20; ++n) {
      const Rational x(n);
      const std::vector<Rational> expected = {
          kappa * (x + 4) * (x + 5) * (x + 6) * (x + 7),
          -4 * kappa * (x + 2) * (x + 4) * (x + 6) * (x + 7),
          6 * kappa * (x + 1) * (x + 4) * (x + 4) * (x + 7),
          -4 * kappa * (x + 1) * (x + 2) * (x + 4) * (x + 6),
          kappa * (x + 1) * (x + 2) * (x + 3) * (x + 4),
      };
      if (odd_weights(n, 4).weights != expected) return {false, "n=" + std::to_string(n)};
    }
    return {true, "20 rows exact"};
  });

  report(6, "Beta closed form matches the weighted sum (n<=60, k<=5) within 1e-11 relative", [&]() -> Outcome {
    double worst = 0.0;
    for (std::int64_t n = 1; n <= 60; ++n)
      for (int k = 1; k <= 5; ++k) {
        const auto row = odd_weights(n, k);
        // the weights alternate and grow with n, so sum exactly before rounding
        Rational exact = 0;
        for (int i = 0; i <= k; ++i) {
          const std::int64_t m = n + 2 * i;
          exact += row.weights[static_cast<std::size_t>(i)] / Rational(m * m);
        }
        const double sum = 6.0 * to_double(exact) / pi2;
        worst = std::max(worst, std::abs(example_closed_form(n, k) - sum) / std::abs(sum));
      }
    const double anchor = std::abs(example_closed_form(2, 1) - 27.0 / (16.0 * pi2));
    std::ostringstream d;
    d << "max rel err " << worst << ", |b_{2,3} - 27/(16 pi^2)| = " << anchor;
    return {worst <= 1e-11 && anchor <= 1e-16, d.str()};
  });

  report(7, "n^2 b_{n,2k+1} varies by < 5% over n in {1e3, 1e3.2, 1e3.5, 1e4} (k=1,2,3)", []() -> Outcome {
    const std::int64_t ns[] = {1000, 1585, 3162, 10000};
    double worst = 0.0;
    for (std::int64_t k = 1; k <= 3; ++k) {
      double lo = INFINITY, hi = 0.0;
      for (auto n : ns) {
        const double r = static_cast<double>(n) * static_cast<double>(n) * example_closed_form(n, k);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      worst = std::max(worst, (hi - lo) / lo);
    }
    std::ostringstream d;
    d << "max relative spread " << worst;
    return {worst < 0.05, d.str()};
  });

  report(8, "random exact sequences (N=50) survive evaluate/extract within 1e-11 (d=1 trapezoid, d=2 Gauss order 64)",
         []() -> Outcome {
           std::mt19937 rng(8);
           double worst = 0.0;
           for (int trial = 0; trial < 5; ++trial)
             for (int d : {1, 2}) {
               const ExactSeq exact = random_exact_normalized(d, 50, rng);
               const FloatSeq seq = to_float(exact);
               const SphericalModel model = model_from_series(seq);
               const FloatSeq back = d == 1 ? extract_fourier(model, 50, 257) : extract_legendre(model, 50, 64);
               for (std::size_t n = 0; n <= 50; ++n) worst = std::max(worst, std::abs(back.values[n] - seq.values[n]));
             }
           std::ostringstream d;
           d << "max abs err " << worst;
           return {worst <= 1e-11, d.str()};
         });

  report(9, "Gram check passes for psi of walked example31 sequences (25 seeds x 30 points on S^2 and S^3)",
         []() -> Outcome {
           int failed = 0, total = 0;
           double worst = INFINITY;
           for (int k = 1; k <= 3; ++k) {
             const SphericalModel model = model_from_series(example_walked_closed_form(2000, k));
             for (int dim : {2, 3})
               for (std::uint64_t seed = 0; seed < 25; ++seed) {
                 const GramReport g = gram_psd_check(model, dim, 30, seed);
                 ++total;
                 if (!g.psd_pass) ++failed;
                 worst = std::min(worst, g.min_eigen_estimate);
               }
           }
           std::ostringstream d;
           d << failed << "/" << total << " trials fail, worst min eigenvalue " << worst
             << "; b_{0,3} = " << example_zero_coefficient(1) << " < 0";
           return {failed == 0, d.str()};
         });

  {
    // Informational only: the n >= 1 part of the same walked sequences.
    int failed = 0, total = 0;
    for (int k = 1; k <= 3; ++k) {
      FloatSeq seq = example_walked_closed_form(2000, k);
      seq.values[0] = 0.0;
      double sum = 0.0;
      for (double v : seq.values) sum += v;
      for (double& v : seq.values) v /= sum;
      const SphericalModel model = model_from_series(seq);
      for (int dim : {2, 3})
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
          ++total;
          if (!gram_psd_check(model, dim, 30, seed).psd_pass) ++failed;
        }
    }
    std::cout << "INFO 9 same check with b_0 removed and renormalized: " << failed << "/" << total
              << " trials fail" << std::endl;
  }

  report(10, "command-line exit codes and byte-identical sequence file round trip", []() -> Outcome {
    const fs::path dir = fs::temp_directory_path() / ("schoenberg_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto path = [&](const char* name) { return (dir / name).string(); };
    write_sequence_file(path("fourier.json"), ExactSeq(1, {Rational(1, 2), Rational(3, 10), Rational(1, 5)}));
    write_sequence_file(path("neg.json"), FloatSeq(1, {0.6, 0.5, -0.1}));
    write_sequence_file(path("e1.json"), delta_sequence<Rational>(2, 3, 1));
    std::ofstream(path("bad.json")) << "{\"dimension\": ";
    std::ofstream(path("sparse.json")) << "{\"samples\": [1,1,1,1,1,1,1,1,1,1,1]}";

    struct Case {
      std::string args;
      int expected;
    };
    const std::vector<Case> cases = {
        {"coeffs --parity odd --n 0 --k 2", 0},
        {"coeffs --parity even --n 0 --k 1 --format json", 0},
        {"coeffs --parity odd --n 1 --k 4 --format csv", 0},
        {"coeffs --parity odd --n 0 --k 0", 2},
        {"coeffs --parity middle --n 0 --k 1", 2},
        {"walk --input " + path("fourier.json") + " --k 1 --method both", 0},
        {"walk --input " + path("fourier.json") + " --k 1 --method recursive", 0},
        {"walk --input " + path("bad.json") + " --k 1", 2},
        {"walk --input " + path("fourier.json") + " --k 2", 2},
        {"extract --model example31 --dim 1 --n-max 50", 0},
        {"extract --model one --dim 2 --n-max 10", 0},
        {"extract --model unknown --dim 1 --n-max 10", 2},
        {"extract --samples " + path("sparse.json") + " --dim 1 --n-max 50", 4},
        {"extract --model cos --dim 2 --n-max 40 --order 10", 4},
        {"eval --input " + path("e1.json") + " --theta 0 --theta pi/2", 0},
        {"eval --input " + path("e1.json") + " --theta 3.5", 2},
        {"verify --input " + path("fourier.json"), 0},
        {"verify --input " + path("neg.json"), 5},
        {"verify --input " + path("e1.json") + " --gram --dimension 2 --points 30 --seed 7", 0},
        {"verify --input " + path("bad.json"), 2},
        {"model example31 --n-max 100", 0},
        {"model hs --epsilon 2.5 --c 1 --n-max 200", 0},
        {"model example31 --walked-k 1 --closed-form --n-max 50", 0},
        {"model nothing --n-max 5", 2},
        {"model hs --epsilon -2 --n-max 5", 2},
        {"", 2},
    };
    std::vector<std::string> wrong;
    for (const auto& c : cases) {
      const int code = run_command(c.args, dir / "stdout.txt");
      if (code != c.expected) wrong.push_back("'" + c.args + "' -> " + std::to_string(code));
    }

    // walk --method both exits 3 when the paths disagree; no consistent input
    // can trigger it, so exit 3 is covered by the in-process unit tests.
    bool round_trip = true;
    for (const char* args : {"model example31 --walked-k 2 --n-max 60 --output ", "extract --model hs --dim 2 --n-max 30 --output "}) {
      const std::string target = path("written.json");
      const std::string again = path("again.json");
      if (run_command(std::string(args) + target, dir / "stdout.txt") != 0 ||
          run_command(std::string(args) + again, dir / "stdout.txt") != 0) {
        round_trip = false;
        continue;
      }
      const std::string text = read_text_file(target);
      round_trip = round_trip && text == read_text_file(again) && serialize_sequence(read_sequence_file(target)) == text;
    }
    write_sequence_file(path("exact.json"), ExactSeq(3, {Rational(-7, 3), Rational(1, 1000000007), 0}));
    const std::string exact_text = read_text_file(path("exact.json"));
    round_trip = round_trip && serialize_sequence(parse_sequence(exact_text)) == exact_text;
    fs::remove_all(dir);

    std::ostringstream d;
    d << cases.size() - wrong.size() << "/" << cases.size() << " invocations as expected";
    for (const auto& w : wrong) d << "; " << w;
    d << "; round trip " << (round_trip ? "byte-identical" : "differs");
    return {wrong.empty() && round_trip, d.str()};
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
