// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "leaky/errors.hpp"

namespace leaky::cli
{

namespace
{

class Parser
{
public:
  explicit Parser(std::string source) : source(std::move(source)) {}

  [[noreturn]] void Fail(const YAML::Node &node, const std::string &msg) const
  {
    const YAML::Mark m = node.Mark();
    std::ostringstream os;
    os << source;
    if (!m.is_null())
    {
      os << ":" << m.line + 1 << ":" << m.column + 1;
    }
    os << ": " << msg;
    throw ConfigError(os.str());
  }

  void RequireMap(const YAML::Node &node, const std::string &what, const std::set<std::string> &keys) const
  {
    if (!node.IsMap())
    {
      Fail(node, what + " must be a mapping");
    }
    for (const auto &kv : node)
    {
      const auto key = kv.first.as<std::string>();
      if (!keys.count(key))
      {
        Fail(kv.first, "unknown key '" + key + "' in " + what);
      }
    }
  }

  double Number(const YAML::Node &node, const std::string &what) const
  {
    double v = 0.0;
    if (!node.IsScalar() || !YAML::convert<double>::decode(node, v) || !std::isfinite(v))
    {
      Fail(node, what + " must be a number");
    }
    return v;
  }

  double Positive(const YAML::Node &node, const std::string &what) const
  {
    const double v = Number(node, what);
    if (!(v > 0.0))
    {
      Fail(node, what + " must be positive");
    }
    return v;
  }

  int Integer(const YAML::Node &node, const std::string &what, int lo) const
  {
    int v = 0;
    if (!node.IsScalar() || !YAML::convert<int>::decode(node, v))
    {
      Fail(node, what + " must be an integer");
    }
    if (v < lo)
    {
      Fail(node, what + " must be at least " + std::to_string(lo));
    }
    return v;
  }

  bool Boolean(const YAML::Node &node, const std::string &what) const
  {
    bool v = false;
    if (!node.IsScalar() || !YAML::convert<bool>::decode(node, v))
    {
      Fail(node, what + " must be true or false");
    }
    return v;
  }

  std::string String(const YAML::Node &node, const std::string &what) const
  {
    if (!node.IsScalar())
    {
      Fail(node, what + " must be a string");
    }
    return node.as<std::string>();
  }

  const YAML::Node Required(const YAML::Node &map, const std::string &key, const std::string &what) const
  {
    const YAML::Node n = map[key];
    if (!n)
    {
      Fail(map, what + " is missing '" + key + "'");
    }
    return n;
  }

  std::string source;
};

Units ParseUnits(const Parser &p, const YAML::Node &node)
{
  Units u;
  if (!node)
  {
    return u;
  }
  p.RequireMap(node, "units", {"length", "frequency", "speed"});
  if (node["length"])
  {
    u.length = p.String(node["length"], "units.length");
    if (u.length == "mm")
    {
      u.length_scale = 1e-3;
    }
    else if (u.length == "m")
    {
      u.length_scale = 1.0;
    }
    else
    {
      p.Fail(node["length"], "units.length must be mm or m");
    }
  }
  if (node["frequency"])
  {
    u.frequency = p.String(node["frequency"], "units.frequency");
    if (u.frequency == "Hz")
    {
      u.frequency_scale = 1.0;
    }
    else if (u.frequency == "kHz")
    {
      u.frequency_scale = 1e3;
    }
    else if (u.frequency == "MHz")
    {
      u.frequency_scale = 1e6;
    }
    else
    {
      p.Fail(node["frequency"], "units.frequency must be Hz, kHz or MHz");
    }
  }
  if (node["speed"])
  {
    u.speed = p.String(node["speed"], "units.speed");
    if (u.speed == "m/s")
    {
      u.speed_scale = 1.0;
    }
    else if (u.speed == "km/s")
    {
      u.speed_scale = 1e3;
    }
    else
    {
      p.Fail(node["speed"], "units.speed must be m/s or km/s");
    }
  }
  return u;
}

// Library name, or an inline mapping {rho, c_l, c_t} / {rho, c}.
NamedMaterial ParseMaterial(const Parser &p, const Units &u, const YAML::Node &node, std::string &name)
{
  if (node.IsScalar())
  {
    name = node.as<std::string>();
    auto m = LookupMaterial(name);
    if (!m)
    {
      std::string known;
      for (const auto &n : MaterialNames())
      {
        known += (known.empty() ? "" : ", ") + n;
      }
      p.Fail(node, "unknown material '" + name + "' (known: " + known + ")");
    }
    return *m;
  }
  p.RequireMap(node, "inline material", {"rho", "c_l", "c_t", "c"});
  name = "inline";
  const double rho = p.Positive(p.Required(node, "rho", "inline material"), "rho");
  try
  {
    if (node["c"])
    {
      if (node["c_l"] || node["c_t"])
      {
        p.Fail(node, "inline material has both fluid (c) and solid (c_l, c_t) speeds");
      }
      return FluidMaterial::Make(rho, p.Positive(node["c"], "c") * u.speed_scale);
    }
    const double cl = p.Positive(p.Required(node, "c_l", "inline material"), "c_l") * u.speed_scale;
    const double ct = p.Positive(p.Required(node, "c_t", "inline material"), "c_t") * u.speed_scale;
    return IsotropicSolid::FromSpeeds(rho, cl, ct);
  }
  catch (const DomainError &e)
  {
    p.Fail(node, e.what());
  }
}

HalfSpaceConfig ParseHalfSpace(const Parser &p, const Units &u, const YAML::Node &node)
{
  HalfSpaceConfig h;
  if (!node || (node.IsScalar() && node.as<std::string>() == "vacuum"))
  {
    return h;
  }
  const NamedMaterial m = ParseMaterial(p, u, node, h.material);
  if (const auto *f = std::get_if<FluidMaterial>(&m))
  {
    h.medium = *f;
  }
  else
  {
    h.medium = std::get<IsotropicSolid>(m);
  }
  return h;
}

}  // namespace

std::vector<double> SweepConfig::Frequencies() const
{
  std::vector<double> f;
  if (count)
  {
    if (*count == 1)
    {
      return {f_min};
    }
    for (int i = 0; i < *count; i++)
    {
      f.push_back(f_min + (f_max - f_min) * i / (*count - 1));
    }
    return f;
  }
  const int n = static_cast<int>(std::floor((f_max - f_min) / *step * (1.0 + 1e-12))) + 1;
  for (int i = 0; i < n; i++)
  {
    f.push_back(f_min + i * *step);
  }
  return f;
}

WaveguideModel SweepConfig::Model(double f_highest) const
{
  WaveguideModel m;
  m.mode = mode;
  const double omega = 2.0 * std::numbers::pi * f_highest;
  for (const auto &l : layers)
  {
    const auto solid = IsotropicSolid::FromSpeeds(l.rho, l.c_l, l.c_t);
    m.layers.push_back(Layer{solid, l.thickness, l.order ? *l.order : ChooseOrder(solid, l.thickness, omega)});
  }
  if (!std::holds_alternative<Vacuum>(bottom.medium))
  {
    m.half_spaces.push_back({Side::Bottom, bottom.medium});
  }
  if (!std::holds_alternative<Vacuum>(top.medium))
  {
    m.half_spaces.push_back({Side::Top, top.medium});
  }
  return m;
}

SweepConfig ParseConfig(const std::string &text, const std::string &source)
{
  Parser p(source);
  YAML::Node root;
  try
  {
    root = YAML::Load(text);
  }
  catch (const YAML::ParserException &e)
  {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                      ": " + e.msg);
  }
  if (!root.IsMap())
  {
    throw ConfigError(source + ":1:1: configuration must be a mapping");
  }
  p.RequireMap(root, "configuration",
               {"units", "dof_mode", "layers", "half_spaces", "frequencies", "tolerances", "solver", "output"});

  SweepConfig c;
  c.source = source;
  c.units = ParseUnits(p, root["units"]);
  const Units &u = c.units;

  if (const auto n = root["dof_mode"])
  {
    const std::string s = p.String(n, "dof_mode");
    if (s == "in_plane")
    {
      c.mode = DofMode::InPlane;
    }
    else if (s == "full")
    {
      c.mode = DofMode::Full;
    }
    else
    {
      p.Fail(n, "dof_mode must be in_plane or full");
    }
  }

  const YAML::Node layers = p.Required(root, "layers", "configuration");
  if (!layers.IsSequence() || layers.size() == 0)
  {
    p.Fail(layers, "layers must be a non-empty list (bottom to top)");
  }
  for (const auto &ln : layers)
  {
    p.RequireMap(ln, "layer", {"material", "thickness", "order"});
    LayerConfig l;
    const YAML::Node mn = p.Required(ln, "material", "layer");
    const NamedMaterial m = ParseMaterial(p, u, mn, l.material);
    const auto *solid = std::get_if<IsotropicSolid>(&m);
    if (!solid)
    {
      p.Fail(mn, "layer material '" + l.material + "' is a fluid");
    }
    l.rho = solid->Density();
    l.c_l = solid->LongitudinalSpeed();
    l.c_t = solid->TransverseSpeed();
    l.thickness = p.Positive(p.Required(ln, "thickness", "layer"), "thickness") * u.length_scale;
    if (ln["order"])
    {
      l.order = p.Integer(ln["order"], "order", 1);
    }
    c.layers.push_back(l);
  }

  if (const auto hs = root["half_spaces"])
  {
    p.RequireMap(hs, "half_spaces", {"bottom", "top"});
    c.bottom = ParseHalfSpace(p, u, hs["bottom"]);
    c.top = ParseHalfSpace(p, u, hs["top"]);
  }

  const YAML::Node fr = p.Required(root, "frequencies", "configuration");
  p.RequireMap(fr, "frequencies", {"min", "max", "count", "step"});
  c.f_min = p.Positive(p.Required(fr, "min", "frequencies"), "frequencies.min") * u.frequency_scale;
  c.f_max = p.Positive(p.Required(fr, "max", "frequencies"), "frequencies.max") * u.frequency_scale;
  if (!(c.f_max > c.f_min))
  {
    p.Fail(fr["max"], "frequencies.max must exceed frequencies.min");
  }
  if (fr["count"] && fr["step"])
  {
    p.Fail(fr, "give either frequencies.count or frequencies.step, not both");
  }
  if (fr["count"])
  {
    c.count = p.Integer(fr["count"], "frequencies.count", 1);
  }
  else if (fr["step"])
  {
    c.step = p.Positive(fr["step"], "frequencies.step") * u.frequency_scale;
  }
  else
  {
    p.Fail(fr, "frequencies needs count or step");
  }

  if (const auto t = root["tolerances"])
  {
    p.RequireMap(t, "tolerances", {"residual", "certificate", "identity", "trapped", "evanescent"});
    auto &cert = c.options.solve.certify;
    if (t["residual"])
    {
      cert.residual_tol = p.Positive(t["residual"], "tolerances.residual");
    }
    if (t["certificate"])
    {
      cert.certificate_tol = p.Positive(t["certificate"], "tolerances.certificate");
    }
    if (t["identity"])
    {
      cert.identity_tol = cert.xi0_tol = p.Positive(t["identity"], "tolerances.identity");
    }
    if (t["trapped"])
    {
      c.options.classify.tol_trapped = p.Positive(t["trapped"], "tolerances.trapped");
    }
    if (t["evanescent"])
    {
      c.options.classify.tol_evan = p.Positive(t["evanescent"], "tolerances.evanescent");
    }
  }

  if (const auto s = root["solver"])
  {
    p.RequireMap(s, "solver", {"merge_identical_fluids", "isotropic_fluid_path", "max_size"});
    if (s["merge_identical_fluids"])
    {
      c.options.solve.mep.merge_identical_fluids = p.Boolean(s["merge_identical_fluids"], "merge_identical_fluids");
    }
    if (s["isotropic_fluid_path"])
    {
      c.options.solve.isotropic_fluid_path = p.Boolean(s["isotropic_fluid_path"], "isotropic_fluid_path");
    }
    if (s["max_size"])
    {
      c.options.solve.max_size = p.Integer(s["max_size"], "max_size", 1);
    }
  }

  if (const auto o = root["output"])
  {
    p.RequireMap(o, "output", {"directory", "plots", "field_extent", "field_points"});
    if (o["directory"])
    {
      c.output_dir = p.String(o["directory"], "output.directory");
    }
    if (o["plots"])
    {
      c.plots = p.Boolean(o["plots"], "output.plots");
    }
    if (o["field_extent"])
    {
      c.field_extent = p.Positive(o["field_extent"], "output.field_extent") * u.length_scale;
    }
    if (o["field_points"])
    {
      c.field_points = p.Integer(o["field_points"], "output.field_points", 2);
    }
  }

  return c;
}

SweepConfig LoadConfig(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError(path + ": cannot open configuration file");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str(), path);
}

}  // namespace leaky::cli
