// Serial vs OpenMP comparison for the batch kernels: the census driver over a
// generated corpus and the raw smoothness probe.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "kwall/census.hpp"
#include "kwall/forms.hpp"
#include "kwall/smoothness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace kwall;
namespace chrono = std::chrono;

namespace {

MultiForm random_curve(std::mt19937_64& rng, int d) {
  Grading g = Grading::bidegree(d, d);
  MultiForm f = zero_form(g);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int i = 0; i <= d; ++i)
    for (int k = 0; k <= d; ++k) {
      int c = coeff(rng);
      if (c == 0) c = 1;
      f = form_add(f, monomial_form(g, Expo{i, d - i, k, d - k}, Rat(c)));
    }
  return f;
}

long run_ms(const std::function<void()>& fn) {
  auto t0 = chrono::steady_clock::now();
  fn();
  return chrono::duration_cast<chrono::milliseconds>(chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int curves = argc > 1 ? std::stoi(argv[1]) : 60;
  std::mt19937_64 rng(7);

  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "kwall_bench_corpus";
  fs::create_directories(dir);
  for (int i = 0; i < curves; ++i) {
    std::ofstream out(dir / ("curve_" + std::to_string(1000 + i) + ".txt"));
    out << form_to_string(random_curve(rng, 4)) << "\n";
  }

  CensusOptions opts;
  CensusOutput serial_out, parallel_out;
  long t_serial = run_ms([&] { serial_out = run_census_serial(dir.string(), opts); });
  long t_parallel = run_ms([&] { parallel_out = run_census(dir.string(), opts); });

  std::cout << "census over " << curves << " curves\n";
  std::cout << "  serial reference: " << t_serial << " ms\n";
#ifdef _OPENMP
  std::cout << "  openmp (" << omp_get_max_threads() << " threads): " << t_parallel << " ms\n";
#else
  std::cout << "  openmp unavailable, parallel driver ran serial: " << t_parallel << " ms\n";
#endif
  std::cout << "  outputs identical: " << (serial_out.to_stream() == parallel_out.to_stream() ? "yes" : "NO")
            << "\n";

  fs::remove_all(dir);
  return 0;
}
