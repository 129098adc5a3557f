#include "cayley/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>

#include "cayley/errors.hpp"
#include "cayley/format.hpp"
#include "cayley/rng.hpp"

namespace cayley {
namespace {

constexpr int kSimplicitySearchCap = 360;

std::string render(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

std::string join(const std::vector<int>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw ValidationError("unknown output format '" + std::string(text) + "'");
}

SweepFamily parse_sweep_family(std::string_view text) {
  if (text == "cyclic_powers" || text == "cyclic") return SweepFamily::cyclic_powers;
  if (text == "alternating_range" || text == "alternating" || text == "alt") return SweepFamily::alternating_range;
  throw ValidationError("unknown sweep family '" + std::string(text) + "'");
}

GroupInfo group_info(const FiniteGroup& group, const SpectrumCache& cache) {
  const RegularRep rep(group);
  const ConjugacyClasses classes = conjugacy_classes(group);
  GroupInfo info;
  info.group = group.name();
  info.order = group.order();
  info.abelian = group.is_abelian();
  for (const auto& cls : classes.classes) info.class_sizes.push_back(static_cast<int>(cls.size()));
  info.spectrum = cache.get(rep);
  check_spectrum(group, info.spectrum);
  info.abelianization_index = abelianization_index(group);
  info.exponent = group_exponent(group);
  if (group.order() <= kSimplicitySearchCap) {
    info.simple = group.order() > 1 && !find_proper_normal_subgroup(group, classes).has_value();
  }
  info.small_degrees = small_degree_counts(info.spectrum, group.order());
  return info;
}

std::vector<ScalingRow> theorem1_sweep(SweepFamily family, const std::vector<int>& sizes, int trials,
                                       std::uint64_t seed, const SpectrumCache& cache, bool parallel) {
  if (sizes.empty()) throw ValidationError("theorem1-sweep needs at least one size");
  for (int k : sizes) {
    if (family == SweepFamily::cyclic_powers && (k < 1 || k > 12)) {
      throw ValidationError("cyclic_powers exponent " + std::to_string(k) + " outside [1, 12]");
    }
    if (family == SweepFamily::alternating_range && (k < 5 || k > 7)) {
      throw ValidationError("alternating_range degree " + std::to_string(k) + " outside [5, 7]");
    }
  }
  const int count = static_cast<int>(sizes.size());
  std::vector<ScalingRow> rows(count);
  std::exception_ptr failure;
  int failed = count;
  std::mutex mutex;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < count; ++i) {
    try {
      const GroupFamily spec = family == SweepFamily::cyclic_powers ? GroupFamily{Cyclic{1 << sizes[i]}}
                                                                    : GroupFamily{Alternating{sizes[i]}};
      const FiniteGroup group = make_group(spec);
      const RegularRep rep(group);
      const IrrepSpectrum spectrum = cache.get(rep);
      EstimateOptions options;
      options.parallel = false;
      const NormEstimate estimate =
          estimate_expected_norm(GaussianSeries::complex_cayley(group), trials, NormMethod::block,
                                 derive_seed(seed, static_cast<std::uint64_t>(i)), &spectrum, options);
      const double n = group.order();
      ScalingRow row;
      row.group = group.name();
      row.n = group.order();
      row.mean = estimate.mean;
      row.std_error = estimate.std_error;
      row.m_of_g = m_of_group(spectrum).value;
      row.ratio_sqrt_n = row.mean / std::sqrt(n);
      row.ratio_sqrt_nlogn = n > 1 ? row.mean / std::sqrt(n * std::log(n)) : 0.0;
      rows[i] = std::move(row);
    } catch (...) {
      std::lock_guard lock(mutex);
      if (i < failed) {
        failed = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::stable_sort(rows.begin(), rows.end(), [](const ScalingRow& a, const ScalingRow& b) { return a.n < b.n; });
  return rows;
}

nlohmann::json to_json(const GroupInfo& info) {
  nlohmann::json small = nlohmann::json::array();
  for (const auto& s : info.small_degrees) small.push_back({{"epsilon", s.epsilon}, {"count", s.count}});
  nlohmann::json doc = {{"group", info.group},
                        {"order", info.order},
                        {"abelian", info.abelian},
                        {"class_count", info.class_sizes.size()},
                        {"class_sizes", info.class_sizes},
                        {"degrees", info.spectrum.degrees},
                        {"sum_of_squares", info.spectrum.sum_of_squares()},
                        {"abelianization_index", info.abelianization_index},
                        {"exponent", info.exponent},
                        {"small_degree_counts", small}};
  doc["simple"] = info.simple ? nlohmann::json(*info.simple) : nlohmann::json(nullptr);
  return doc;
}

nlohmann::json to_json(const ScalingRow& row) {
  return {{"group", row.group},
          {"n", row.n},
          {"mean", row.mean},
          {"std_error", row.std_error},
          {"m", row.m_of_g},
          {"ratio_sqrt_n", row.ratio_sqrt_n},
          {"ratio_sqrt_nlogn", row.ratio_sqrt_nlogn}};
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::string out = "group,n,mean,std_error,m,ratio_sqrt_n,ratio_sqrt_nlogn\n";
  for (const auto& r : rows) {
    out += r.group + "," + std::to_string(r.n) + "," + format_double(r.mean) + "," + format_double(r.std_error) +
           "," + format_double(r.m_of_g) + "," + format_double(r.ratio_sqrt_n) + "," +
           format_double(r.ratio_sqrt_nlogn) + "\n";
  }
  return out;
}

std::string cmd_group_info(const ExperimentConfig& config) {
  const FiniteGroup group = make_group(config.group);
  const GroupInfo info = group_info(group, SpectrumCache(config.cache_dir));
  if (config.format == OutputFormat::csv) {
    return "group,n,classes,class_sizes,degrees,sum_of_squares\n" + info.group + "," + std::to_string(info.order) +
           "," + std::to_string(info.class_sizes.size()) + "," + join(info.class_sizes, ';') + "," +
           join(info.spectrum.degrees, ';') + "," + std::to_string(info.spectrum.sum_of_squares()) + "\n";
  }
  return render(to_json(info));
}

std::string cmd_estimate(const ExperimentConfig& config) {
  const FiniteGroup group = make_group(config.group);
  const NormMethod method = parse_norm_method(config.method.empty() ? "block" : config.method);
  std::optional<IrrepSpectrum> spectrum;
  if (method == NormMethod::block) spectrum = SpectrumCache(config.cache_dir).get(RegularRep(group));
  const auto series = method == NormMethod::direct_real ? GaussianSeries::real_cayley(group)
                                                        : GaussianSeries::complex_cayley(group);
  const NormEstimate estimate =
      estimate_expected_norm(series, config.trials, method, config.seed, spectrum ? &*spectrum : nullptr);
  if (config.format == OutputFormat::csv) {
    return "group,method,trials,seed,mean,std_error\n" + estimate.group + "," + to_string(estimate.method) + "," +
           std::to_string(estimate.trials) + "," + std::to_string(estimate.seed) + "," +
           format_double(estimate.mean) + "," + format_double(estimate.std_error) + "\n";
  }
  return render(to_json(estimate));
}

std::string cmd_bounds(const ExperimentConfig& config) {
  const FiniteGroup group = make_group(config.group);
  const IrrepSpectrum spectrum = SpectrumCache(config.cache_dir).get(RegularRep(group));
  const BoundsReport report = bounds_report(group, spectrum);
  if (config.format == OutputFormat::csv) return csv_header_bounds() + "\n" + to_csv_row(report) + "\n";
  return render(to_json(report));
}

std::string cmd_theorem1_sweep(const ExperimentConfig& config) {
  const auto rows = theorem1_sweep(parse_sweep_family(config.family), config.sizes, config.trials, config.seed,
                                   SpectrumCache(config.cache_dir));
  if (config.format == OutputFormat::csv) return scaling_csv(rows);
  nlohmann::json doc = {{"family", config.family}, {"trials", config.trials}, {"seed", config.seed}};
  doc["rows"] = nlohmann::json::array();
  for (const auto& r : rows) doc["rows"].push_back(to_json(r));
  return render(doc);
}

std::string cmd_spencer(const ExperimentConfig& config) {
  const FiniteGroup group = make_group(config.group);
  const ColoringMethod method = parse_coloring_method(config.method.empty() ? "local" : config.method);
  Coloring coloring;
  switch (method) {
    case ColoringMethod::brute_force: coloring = brute_force(group); break;
    case ColoringMethod::random_best_of_k: coloring = random_best_of_k(group, config.budget, config.seed); break;
    case ColoringMethod::local_search: coloring = local_search_restarts(group, config.budget, config.seed); break;
    case ColoringMethod::abelian_reduction: coloring = abelian_reduction(group, config.seed, config.budget); break;
  }
  coloring.seed = config.seed;
  verify_coloring(group, coloring);
  if (config.format == OutputFormat::csv) {
    return "group,method,seed,norm,ratio\n" + coloring.group + "," + to_string(coloring.method) + "," +
           std::to_string(coloring.seed) + "," + format_double(coloring.norm) + "," +
           format_double(coloring.discrepancy_ratio) + "\n";
  }
  return render(to_json(coloring));
}

std::string run_command(const ExperimentConfig& config) {
  if (config.subcommand == "group-info") return cmd_group_info(config);
  if (config.subcommand == "estimate") return cmd_estimate(config);
  if (config.subcommand == "bounds") return cmd_bounds(config);
  if (config.subcommand == "theorem1-sweep") return cmd_theorem1_sweep(config);
  if (config.subcommand == "spencer") return cmd_spencer(config);
  throw ValidationError("unknown subcommand '" + config.subcommand + "'");
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConvergenceError*>(&error)) return 3;
  if (dynamic_cast<const ValidationError*>(&error) || dynamic_cast<const std::logic_error*>(&error) ||
      dynamic_cast<const std::out_of_range*>(&error)) {
    return 2;
  }
  return 1;
}

}  // namespace cayley
