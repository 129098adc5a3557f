#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayley/bounds.hpp"
#include "cayley/group.hpp"
#include "cayley/repr.hpp"
#include "cayley/sampler.hpp"
#include "cayley/spencer.hpp"

namespace cayley {

enum class OutputFormat { json, csv };

OutputFormat parse_output_format(std::string_view text);

struct ExperimentConfig {
  std::string subcommand;
  std::string group;
  int trials = 1000;
  std::uint64_t seed = 1;
  std::string method;
  OutputFormat format = OutputFormat::json;
  std::optional<std::filesystem::path> out;
  int budget = 20;
  std::string family;       // theorem1-sweep
  std::vector<int> sizes;   // theorem1-sweep
  std::optional<std::filesystem::path> cache_dir;
};

struct GroupInfo {
  std::string group;
  int order = 0;
  bool abelian = false;
  std::vector<int> class_sizes;
  IrrepSpectrum spectrum;
  int abelianization_index = 0;
  int exponent = 0;
  std::optional<bool> simple;  // searched only for n <= 360
  std::vector<SmallDegreeCount> small_degrees;
};

GroupInfo group_info(const FiniteGroup& group, const SpectrumCache& cache);

struct ScalingRow {
  std::string group;
  int n = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double m_of_g = 0.0;
  double ratio_sqrt_n = 0.0;      // mean / sqrt(n)
  double ratio_sqrt_nlogn = 0.0;  // mean / sqrt(n ln n), natural log
};

enum class SweepFamily { cyclic_powers, alternating_range };
SweepFamily parse_sweep_family(std::string_view text);

/// One row per size: block-method estimate plus m(G), sorted by n. For
/// cyclic_powers a size k means the cyclic group of order 2^k; for
/// alternating_range it means A_k. Row i uses seed derive_seed(seed, i).
std::vector<ScalingRow> theorem1_sweep(SweepFamily family, const std::vector<int>& sizes, int trials,
                                       std::uint64_t seed, const SpectrumCache& cache, bool parallel = true);

nlohmann::json to_json(const GroupInfo& info);
nlohmann::json to_json(const ScalingRow& row);
std::string scaling_csv(const std::vector<ScalingRow>& rows);

/// Runs one subcommand and returns the rendered output document.
std::string cmd_group_info(const ExperimentConfig& config);
std::string cmd_estimate(const ExperimentConfig& config);
std::string cmd_bounds(const ExperimentConfig& config);
std::string cmd_theorem1_sweep(const ExperimentConfig& config);
std::string cmd_spencer(const ExperimentConfig& config);

std::string run_command(const ExperimentConfig& config);

/// Process exit code for an exception escaping run_command: 2 for
/// validation failures, 3 for numerical non-convergence, 1 otherwise.
int exit_code_for(const std::exception& error);

}  // namespace cayley
