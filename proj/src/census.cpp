#include "kwall/census.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kwall/hm.hpp"
#include "kwall/smoothness.hpp"

namespace kwall {

namespace {

Json frame_result(const MultiForm& f, const std::string& name, const std::optional<Mat4>& frame) {
  Json j;
  j["frame"] = name;
  StabilityResult sr = torus_semistable(f, Torus::SL2xSL2, frame);
  j["status"] = sr.semistable ? "Semistable" : "Unstable";
  if (sr.certificate) {
    Json cert;
    cert["weights"] = sr.certificate->weights;
    cert["frame"] = name;
    WeightPolytope wp = weight_polytope(f, Torus::SL2xSL2, frame);
    std::vector<long long> reduced{sr.certificate->weights[0], sr.certificate->weights[2]};
    cert["support_min_weight"] = -polytope_max_weight(wp, reduced);
    j["certificate"] = cert;
  }
  return j;
}

std::vector<std::string> sorted_form_files(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::exists(dir) || !fs::is_directory(dir)) fail(ErrorCode::Io, "not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path().filename().string());
  std::sort(files.begin(), files.end());
  return files;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

CensusOutput run_impl(const std::string& dir, const CensusOptions& opts, bool parallel) {
  std::vector<std::string> files = sorted_form_files(dir);
  std::vector<std::string> texts(files.size());
  for (size_t i = 0; i < files.size(); ++i)
    texts[i] = strip(read_file((std::filesystem::path(dir) / files[i]).string()));

  std::vector<std::string> records(files.size());
  long n = static_cast<long>(files.size());
#ifdef _OPENMP
  int previous = omp_get_max_threads();
  if (parallel && opts.jobs > 0) omp_set_num_threads(opts.jobs);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < n; ++i) records[i] = census_record(files[i], texts[i], opts).dump();
  if (parallel && opts.jobs > 0) omp_set_num_threads(previous);
#else
  (void)parallel;
  for (long i = 0; i < n; ++i) records[i] = census_record(files[i], texts[i], opts).dump();
#endif

  size_t smooth = 0, singular = 0, errors = 0, semistable = 0, unstable = 0;
  for (const std::string& line : records) {
    Json j = Json::parse(line);
    if (j.contains("error")) {
      ++errors;
      continue;
    }
    if (j["smooth"].get<bool>()) ++smooth;
    else ++singular;
    for (const auto& fr : j["torus"]) {
      if (fr["status"] == "Semistable") ++semistable;
      else ++unstable;
    }
  }
  Json summary;
  summary["summary"] = Json{{"files", files.size()}, {"smooth", smooth},          {"singular", singular},
                            {"errors", errors},      {"semistable", semistable},  {"unstable", unstable}};
  CensusOutput out;
  out.records = std::move(records);
  out.summary = summary.dump();
  return out;
}

}  // namespace

Json census_record(const std::string& filename, const std::string& text, const CensusOptions& opts) {
  Json j;
  j["file"] = filename;
  try {
    MultiForm f = parse_form(text, opts.grading);
    SmoothnessResult sm = is_smooth_curve(f);
    j["smooth"] = sm.smooth;
    if (!sm.smooth) {
      j["smoothness"] = Json{{"reason", sm.reason}, {"chart", sm.chart}, {"eliminant", sm.eliminant}};
    }
    Json torus = Json::array();
    torus.push_back(frame_result(f, "standard", std::nullopt));
    for (const CensusFrame& fr : opts.frames)
      torus.push_back(frame_result(f, fr.name, mat4_from_blocks(fr.xblock, fr.yblock)));
    j["torus"] = torus;
    InstabilityMeasure im = instability_measure(f, Torus::SL2xSL2);
    j["instability_measure"] = rat_to_string(im.dist2);
  } catch (const Error& err) {
    j["error"] = Json{{"code", error_code_name(err.code())}, {"message", err.what()}};
  }
  return j;
}

std::string CensusOutput::to_stream() const {
  std::ostringstream os;
  for (const std::string& r : records) os << r << "\n";
  os << summary << "\n";
  return os.str();
}

CensusOutput run_census(const std::string& dir, const CensusOptions& opts) {
  return run_impl(dir, opts, true);
}

CensusOutput run_census_serial(const std::string& dir, const CensusOptions& opts) {
  return run_impl(dir, opts, false);
}

}  // namespace kwall
