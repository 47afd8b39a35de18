// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numbers>
#include <thread>

#include "leaky/errors.hpp"

namespace leaky
{

CoupledSystem WaveguideModel::Build(double omega) const
{
  return BuildCoupledSystem(Stack(), omega, half_spaces);
}

FrequencyResult SolveFrequency(const WaveguideModel &model, double frequency, const SweepOptions &options)
{
  FrequencyResult out;
  out.frequency = frequency;
  const auto start = std::chrono::steady_clock::now();
  try
  {
    const CoupledSystem sys = model.Build(2.0 * std::numbers::pi * frequency);
    out.isotropic_fluid_path = options.solve.isotropic_fluid_path && IsotropicFluidPathApplicable(sys);
    const MepSystem mep = out.isotropic_fluid_path ? BuildMepIsotropicFluid(sys, options.solve.mep)
                                                   : BuildMep(sys, options.solve.mep);
    out.determinant_size = mep.DeterminantSize();
    const auto delta = OperatorDeterminants(mep, options.solve.max_size);
    const auto tuples = ExtractModes(SolveShifted(delta, options.solve.shift), mep, sys, options.solve.certify);
    for (const auto &t : tuples)
    {
      const double re = t.k.real(), scale = std::abs(t.k);
      const bool forward = std::abs(re) > 1e-12 * scale ? re > 0.0 : t.k.imag() > 0.0;
      if (options.positive_only && !forward)
      {
        continue;
      }
      out.modes.push_back(MakeModeSolution(t, sys, options.classify));
    }
  }
  catch (const std::exception &e)
  {
    out.modes.clear();
    out.error = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<FrequencyResult> DispersionSweep(const WaveguideModel &model, const std::vector<double> &frequencies,
                                             const SweepOptions &options)
{
  if (frequencies.empty())
  {
    throw UsageError("frequency list is empty");
  }
  for (size_t i = 0; i < frequencies.size(); i++)
  {
    if (!(frequencies[i] > 0.0) || (i > 0 && frequencies[i] < frequencies[i - 1]))
    {
      throw UsageError("frequencies must be positive and ascending");
    }
  }
  std::vector<FrequencyResult> results(frequencies.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < frequencies.size(); i = next++)
    {
      results[i] = SolveFrequency(model, frequencies[i], options);
    }
  };
  const int threads = std::clamp<int>(options.threads, 1, static_cast<int>(frequencies.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; t++)
  {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &t : pool)
  {
    t.join();
  }
  return results;
}

}  // namespace leaky
