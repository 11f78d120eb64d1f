#pragma once

#include <string>
#include <vector>

#include "kwall/forms.hpp"
#include "kwall/report.hpp"

namespace kwall {

struct CensusFrame {
  std::string name;
  Mat2 xblock;
  Mat2 yblock;
};

struct CensusOptions {
  Grading grading = Grading::bidegree(4, 4);
  std::vector<CensusFrame> frames;  // empty: just the standard frame
  int jobs = 0;                     // 0: library default
};

// One JSONL line per input file plus a trailing summary line. Record order is
// sorted by filename no matter how many workers ran; per-file errors are
// recorded in-stream and never abort the batch. Output carries no timing so
// reruns are byte-identical.
struct CensusOutput {
  std::vector<std::string> records;
  std::string summary;

  std::string to_stream() const;
};

// The parallel kernel (OpenMP over files when available) and the serial
// reference it is tested against.
CensusOutput run_census(const std::string& dir, const CensusOptions& opts);
CensusOutput run_census_serial(const std::string& dir, const CensusOptions& opts);

// Census record for one already-parsed curve (shared by both drivers).
Json census_record(const std::string& filename, const std::string& text, const CensusOptions& opts);

}  // namespace kwall
