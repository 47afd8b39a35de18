// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/cli/run.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <Eigen/Core>
#include <json.hpp>

#include "leaky/cli/config.hpp"
#include "leaky/cli/output.hpp"
#include "leaky/errors.hpp"
#include "leaky/oracle.hpp"

namespace leaky::cli
{

namespace
{

namespace fs = std::filesystem;
using nlohmann::json;

std::string ModeName(DofMode m)
{
  return m == DofMode::InPlane ? "in_plane" : "full";
}

json Echo(const SweepConfig &c, const WaveguideModel &model)
{
  json layers = json::array();
  for (size_t i = 0; i < c.layers.size(); i++)
  {
    const auto &l = c.layers[i];
    layers.push_back({{"material", l.material},
                      {"rho", l.rho},
                      {"c_l", l.c_l},
                      {"c_t", l.c_t},
                      {"thickness_m", l.thickness},
                      {"order", model.layers[i].order},
                      {"order_auto", !l.order.has_value()}});
  }
  const auto &s = c.options.solve;
  return {{"source", c.source},
          {"dof_mode", ModeName(c.mode)},
          {"layers", layers},
          {"half_spaces", {{"bottom", c.bottom.material}, {"top", c.top.material}}},
          {"frequencies_hz", c.Frequencies()},
          {"tolerances",
           {{"residual", s.certify.residual_tol},
            {"certificate", s.certify.certificate_tol},
            {"identity", s.certify.identity_tol},
            {"trapped_np_per_mm", c.options.classify.tol_trapped},
            {"evanescent", c.options.classify.tol_evan}}},
          {"solver",
           {{"merge_identical_fluids", s.mep.merge_identical_fluids},
            {"isotropic_fluid_path", s.isotropic_fluid_path},
            {"max_size", s.max_size},
            {"seed", s.shift.seed},
            {"threads", c.options.threads}}}};
}

void WriteFile(const fs::path &path, const std::string &text)
{
  std::ofstream f(path);
  if (!f)
  {
    throw std::runtime_error("cannot write " + path.string());
  }
  f << text;
}

}  // namespace

int Run(const RunOptions &options, std::ostream &out, std::ostream &err)
{
  SweepConfig cfg;
  std::vector<double> freqs;
  WaveguideModel model;
  try
  {
    cfg = LoadConfig(options.config);
    if (options.out)
    {
      cfg.output_dir = *options.out;
    }
    if (options.threads)
    {
      if (*options.threads < 1)
      {
        throw ConfigError("--threads must be at least 1");
      }
      cfg.options.threads = *options.threads;
    }
    if (options.seed)
    {
      cfg.options.solve.shift.seed = *options.seed;
    }
    if (options.freq.empty())
    {
      freqs = cfg.Frequencies();
    }
    else
    {
      for (double f : options.freq)
      {
        if (!(f > 0.0))
        {
          throw ConfigError("--freq values must be positive");
        }
        freqs.push_back(f * cfg.units.frequency_scale);
      }
      std::sort(freqs.begin(), freqs.end());
    }
    double f_highest = freqs.back();
    for (double f : options.modes_at)
    {
      if (!(f > 0.0))
      {
        throw ConfigError("--modes-at values must be positive");
      }
      f_highest = std::max(f_highest, f * cfg.units.frequency_scale);
    }
    model = cfg.Model(f_highest);
    model.Stack();
  }
  catch (const ConfigError &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const std::exception &e)
  {
    err << "error: " << options.config << ": " << e.what() << '\n';
    return kExitConfig;
  }

  if (options.validate_only)
  {
    out << options.config << ": ok\n";
    for (size_t i = 0; i < model.layers.size(); i++)
    {
      out << "  layer " << i << ": " << cfg.layers[i].material << ", " << FormatDouble(model.layers[i].thickness)
          << " m, order " << model.layers[i].order << '\n';
    }
    out << "  frequencies: " << freqs.size() << " from " << FormatDouble(freqs.front()) << " Hz to "
        << FormatDouble(freqs.back()) << " Hz\n";
    return kExitOk;
  }

  const fs::path dir(cfg.output_dir);
  try
  {
    fs::create_directories(dir);
  }
  catch (const std::exception &e)
  {
    err << "error: cannot create output directory " << dir.string() << ": " << e.what() << '\n';
    return kExitConfig;
  }

  const auto results = DispersionSweep(model, freqs, cfg.options);

  OracleTable oracle;
  bool use_oracle = options.oracle;
  if (use_oracle)
  {
    for (const auto &r : results)
    {
      auto &row = oracle.emplace_back();
      const double omega = 2.0 * std::numbers::pi * r.frequency;
      for (const auto &m : r.modes)
      {
        try
        {
          row.push_back(CharacteristicResidual(model.Stack(), model.half_spaces, omega, m.k, m.w));
        }
        catch (const UnsupportedError &e)
        {
          err << "warning: oracle skipped: " << e.what() << '\n';
          use_oracle = false;
          break;
        }
      }
      if (!use_oracle)
      {
        break;
      }
    }
  }

  std::ostringstream csv;
  WriteDispersionCsv(csv, model, results, use_oracle ? &oracle : nullptr);
  WriteFile(dir / "dispersion.csv", csv.str());
  if (cfg.plots)
  {
    std::ostringstream a, b;
    WritePlotSvg(a, results, PlotKind::PhaseVelocity);
    WritePlotSvg(b, results, PlotKind::Attenuation);
    WriteFile(dir / "dispersion_cp.svg", a.str());
    WriteFile(dir / "dispersion_att.svg", b.str());
  }

  json shapes = json::array();
  const double extent = cfg.field_extent > 0.0 ? cfg.field_extent : model.Stack().Thickness();
  for (double fu : options.modes_at)
  {
    const double f = fu * cfg.units.frequency_scale;
    const auto r = SolveFrequency(model, f, cfg.options);
    if (r.error)
    {
      err << "warning: mode shapes at " << FormatDouble(f) << " Hz: " << *r.error << '\n';
      continue;
    }
    const CoupledSystem sys = model.Build(2.0 * std::numbers::pi * f);
    std::vector<const ModeSolution *> admissible;
    for (const auto &m : r.modes)
    {
      if (IsAdmissible(m))
      {
        admissible.push_back(&m);
      }
    }
    std::sort(admissible.begin(), admissible.end(), [](auto *a, auto *b) { return a->k.real() < b->k.real(); });
    for (size_t i = 0; i < admissible.size(); i++)
    {
      const std::string name = "modeshape_" + FormatDouble(f) + "_" + std::to_string(i) + ".csv";
      std::ostringstream s;
      WriteModeShapeCsv(s, *admissible[i], sys, extent, cfg.field_points);
      WriteFile(dir / name, s.str());
      shapes.push_back({{"file", name},
                        {"f_hz", f},
                        {"re_k", admissible[i]->k.real()},
                        {"im_k", admissible[i]->k.imag()},
                        {"class", ToString(admissible[i]->classification)}});
    }
  }

  std::ifstream raw(options.config);
  std::stringstream raw_text;
  raw_text << raw.rdbuf();

  json per = json::array();
  size_t failed = 0, total_modes = 0;
  double total_seconds = 0.0;
  for (const auto &r : results)
  {
    json e = {{"f_hz", r.frequency},
              {"seconds", r.seconds},
              {"modes", r.modes.size()},
              {"isotropic_fluid_path", r.isotropic_fluid_path},
              {"determinant_size", r.determinant_size}};
    if (r.error)
    {
      e["error"] = *r.error;
      failed++;
      err << "warning: " << FormatDouble(r.frequency) << " Hz failed: " << *r.error << '\n';
    }
    total_modes += r.modes.size();
    total_seconds += r.seconds;
    per.push_back(e);
  }
  const json run = {
    {"config", Echo(cfg, model)},
    {"config_text", raw_text.str()},
    {"versions",
     {{"leaky", LEAKY_VERSION},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                  std::to_string(EIGEN_MINOR_VERSION)},
      {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                          std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                          std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
      {"compiler", __VERSION__}}},
    {"frequencies", per},
    {"mode_shapes", shapes},
    {"oracle", use_oracle},
    {"total_seconds", total_seconds},
    {"failed_frequencies", failed}};
  WriteFile(dir / "run.json", run.dump(2) + "\n");

  out << "solved " << results.size() - failed << "/" << results.size() << " frequencies, " << total_modes
      << " modes, " << FormatDouble(total_seconds) << " s; output in " << dir.string() << '\n';
  return failed == results.size() ? kExitAllFailed : kExitOk;
}

}  // namespace leaky::cli
