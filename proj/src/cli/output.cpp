// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/cli/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <tuple>

namespace leaky::cli
{

std::string FormatDouble(double v)
{
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

bool IsAdmissible(const ModeSolution &m)
{
  return m.k.real() > 0.0 && (m.classification == ModeClass::Outgoing || m.classification == ModeClass::Trapped);
}

namespace
{

const HalfSpaceSpec *FindSide(const WaveguideModel &model, Side side)
{
  for (const auto &h : model.half_spaces)
  {
    if (h.side == side && !std::holds_alternative<Vacuum>(h.medium))
    {
      return &h;
    }
  }
  return nullptr;
}

void Complex(std::ostream &os, complex z, bool present)
{
  if (present)
  {
    os << ',' << FormatDouble(z.real()) << ',' << FormatDouble(z.imag());
  }
  else
  {
    os << ",,";
  }
}

}  // namespace

void WriteDispersionCsv(std::ostream &os, const WaveguideModel &model, const std::vector<FrequencyResult> &results,
                        const OracleTable *oracle)
{
  os << "f_Hz,re_k_rad_per_m,im_k_np_per_m,c_p_m_per_s,att_db_per_mm,class,multiplicity";
  for (const char *s : {"bottom", "top"})
  {
    os << ",re_kappa_y_" << s << ",im_kappa_y_" << s << ",re_gamma_y_" << s << ",im_gamma_y_" << s;
  }
  os << ",residual";
  if (oracle)
  {
    os << ",characteristic_residual";
  }
  os << '\n';

  std::vector<std::pair<size_t, size_t>> rows;
  for (size_t i = 0; i < results.size(); i++)
  {
    for (size_t j = 0; j < results[i].modes.size(); j++)
    {
      rows.emplace_back(i, j);
    }
  }
  auto key = [&](const std::pair<size_t, size_t> &r) {
    const auto &m = results[r.first].modes[r.second];
    return std::make_tuple(results[r.first].frequency, m.k.real(), m.k.imag());
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const auto &a, const auto &b) { return key(a) < key(b); });

  const HalfSpaceSpec *hs[2] = {FindSide(model, Side::Bottom), FindSide(model, Side::Top)};
  for (const auto &[i, j] : rows)
  {
    const ModeSolution &m = results[i].modes[j];
    os << FormatDouble(results[i].frequency) << ',' << FormatDouble(m.k.real()) << ',' << FormatDouble(m.k.imag())
       << ',';
    if (m.k.real() != 0.0)
    {
      os << FormatDouble(m.PhaseVelocity());
    }
    os << ',' << FormatDouble(m.AttenuationDbPerMm()) << ',' << ToString(m.classification) << ',' << m.multiplicity;
    for (int s = 0; s < 2; s++)
    {
      const Side side = s == 0 ? Side::Bottom : Side::Top;
      const bool solid = hs[s] && std::holds_alternative<IsotropicSolid>(hs[s]->medium);
      Complex(os, m.w.Kappa(side), hs[s] != nullptr);
      Complex(os, m.w.Gamma(side), solid);
    }
    os << ',' << FormatDouble(m.residual);
    if (oracle)
    {
      os << ',';
      if (i < oracle->size() && j < (*oracle)[i].size() && (*oracle)[i][j])
      {
        os << FormatDouble(*(*oracle)[i][j]);
      }
    }
    os << '\n';
  }
}

void WriteModeShapeCsv(std::ostream &os, const ModeSolution &mode, const CoupledSystem &sys, double extent,
                       int points)
{
  os << "y_m,region,re_ux,im_ux,re_uy,im_uy,re_uz,im_uz,re_tx,im_tx,re_ty,im_ty,re_tz,im_tz,re_p,im_p\n";
  auto row = [&](const FieldSample &s, const char *region) {
    os << FormatDouble(s.y) << ',' << region;
    for (int c = 0; c < 3; c++)
    {
      Complex(os, s.u(c), true);
    }
    for (int c = 0; c < 3; c++)
    {
      Complex(os, s.traction(c), true);
    }
    Complex(os, s.pressure, s.region == Region::Fluid);
    os << '\n';
  };
  const double y0 = sys.stack.YBottom(), y1 = sys.stack.YTop();
  const int n = std::max(points, 2);
  if (sys.Find(Side::Bottom))
  {
    for (int i = 0; i < n; i++)
    {
      const double y = y0 - extent + extent * i / (n - 1);
      row(EvaluateHalfSpace(mode, sys, Side::Bottom, 0.0, y), "bottom");
    }
  }
  for (int i = 0; i < n; i++)
  {
    const double y = i == n - 1 ? y1 : y0 + (y1 - y0) * i / (n - 1);
    row(EvaluatePlate(mode, sys, 0.0, y), "plate");
  }
  if (sys.Find(Side::Top))
  {
    for (int i = 0; i < n; i++)
    {
      const double y = y1 + extent * i / (n - 1);
      row(EvaluateHalfSpace(mode, sys, Side::Top, 0.0, y), "top");
    }
  }
}

namespace
{

std::string Short(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

const char *Colour(ModeClass c)
{
  return c == ModeClass::Trapped ? "#1a9850" : "#2166ac";
}

}  // namespace

void WritePlotSvg(std::ostream &os, const std::vector<FrequencyResult> &results, PlotKind kind)
{
  constexpr double W = 720, H = 460, L = 80, R = 20, T = 30, B = 60;
  constexpr double floor_db = 1e-6;
  struct Point
  {
    double x, y;
    ModeClass c;
  };
  std::vector<Point> pts;
  double fmax = 0.0;
  for (const auto &r : results)
  {
    fmax = std::max(fmax, r.frequency);
    for (const auto &m : r.modes)
    {
      if (!IsAdmissible(m))
      {
        continue;
      }
      const double y = kind == PlotKind::PhaseVelocity ? m.PhaseVelocity()
                                                       : std::log10(std::max(m.AttenuationDbPerMm(), floor_db));
      pts.push_back({r.frequency, y, m.classification});
    }
  }
  const double fscale = fmax >= 1e6 ? 1e6 : fmax >= 1e3 ? 1e3 : 1.0;
  const char *funit = fscale == 1e6 ? "MHz" : fscale == 1e3 ? "kHz" : "Hz";

  double ylo = 0.0, yhi = 1.0;
  if (!pts.empty())
  {
    std::vector<double> ys;
    for (const auto &p : pts)
    {
      ys.push_back(p.y);
    }
    std::sort(ys.begin(), ys.end());
    if (kind == PlotKind::PhaseVelocity)
    {
      // Phase velocity diverges at cut-off; clip to the bulk of the data.
      yhi = 1.1 * ys[static_cast<size_t>(0.95 * static_cast<double>(ys.size() - 1))];
    }
    else
    {
      ylo = std::floor(ys.front());
      yhi = std::max(std::ceil(ys.back()), ylo + 1.0);
    }
  }
  const double xhi = fmax > 0.0 ? fmax / fscale : 1.0;
  auto X = [&](double f) { return L + (W - L - R) * (f / fscale) / xhi; };
  auto Y = [&](double v) { return H - B - (H - T - B) * (v - ylo) / (yhi - ylo); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; i++)
  {
    const double fx = xhi * i / 5, px = L + (W - L - R) * i / 5;
    os << "<text x=\"" << px << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << Short(fx) << "</text>\n";
    const double vy = ylo + (yhi - ylo) * i / 5, py = Y(vy);
    const std::string label = kind == PlotKind::Attenuation ? "1e" + Short(vy) : Short(vy);
    os << "<text x=\"" << L - 6 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">" << label << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">frequency (" << funit
     << ")</text>\n";
  os << "<text transform=\"translate(18," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << (kind == PlotKind::PhaseVelocity ? "phase velocity (m/s)" : "attenuation (dB/mm)") << "</text>\n";
  for (const auto &p : pts)
  {
    if (p.y < ylo || p.y > yhi)
    {
      continue;
    }
    os << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"2\" fill=\"" << Colour(p.c) << "\"/>\n";
  }
  os << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 16 << "\" fill=\"" << Colour(ModeClass::Outgoing)
     << "\">outgoing</text>\n";
  os << "<text x=\"" << W - R - 80 << "\" y=\"" << T + 16 << "\" fill=\"" << Colour(ModeClass::Trapped)
     << "\">trapped</text>\n";
  os << "</svg>\n";
}

}  // namespace leaky::cli
