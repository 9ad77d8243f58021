#include "commands.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "magvac/astro.hpp"
#include "magvac/emission.hpp"
#include "magvac/errors.hpp"
#include "magvac/rng.hpp"
#include "magvac/sampler.hpp"
#include "magvac/specfun.hpp"
#include "magvac/units.hpp"
#include "magvac/vacuum.hpp"

namespace magvac::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// thrown for problems the user can fix on the command line; exit 2
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string config;
  std::string constants = "paper";
  std::string constants_file;
  std::string fermions;
  std::string format = "json";
  bool no_meta = false;
  CLI::Option* constants_opt = nullptr;
  CLI::Option* constants_file_opt = nullptr;
  CLI::Option* fermions_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  // from --config, only "seed" is command specific
  std::optional<std::uint64_t> config_seed;
  std::optional<unsigned> config_workers;
};

struct Context {
  units::PhysicalConstants consts;
  vacuum::FermionSet fermions;
  std::string format;
  bool format_explicit = false;
};

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void apply_config_file(Global& g) {
  if (g.config.empty()) return;
  std::ifstream in(g.config);
  if (!in) throw ConfigError("cannot open config file '" + g.config + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + g.config + "': " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  auto str = [&](const char* key) {
    if (!doc[key].is_string()) {
      throw ConfigError(std::string("config key '") + key + "' must be a string");
    }
    return doc[key].get<std::string>();
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "constants") {
      if (g.constants_opt->count() == 0) g.constants = str("constants");
    } else if (key == "constants_file") {
      if (g.constants_file_opt->count() == 0) g.constants_file = str("constants_file");
    } else if (key == "fermions") {
      if (g.fermions_opt->count() == 0) g.fermions = str("fermions");
    } else if (key == "format") {
      if (g.format_opt->count() == 0) g.format = str("format");
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError("config key 'seed' must be an unsigned integer");
      g.config_seed = value.get<std::uint64_t>();
    } else if (key == "workers") {
      if (!value.is_number_unsigned()) throw ConfigError("config key 'workers' must be an unsigned integer");
      g.config_workers = value.get<unsigned>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

units::PhysicalConstants resolve_constants(const Global& g) {
  const auto mode = units::constants_mode_from_string(g.constants);
  return units::load_constants(g.constants_file, mode);
}

Context resolve(const Global& g) {
  Context ctx;
  ctx.consts = resolve_constants(g);
  ctx.fermions = g.fermions.empty() ? vacuum::FermionSet::standard_model()
                                    : vacuum::load_fermion_set(g.fermions);
  ctx.format = g.format;
  ctx.format_explicit = g.format_opt->count() > 0;
  return ctx;
}

void require_format(const Context& ctx, std::initializer_list<std::string_view> ok,
                    std::string_view command) {
  if (std::find(ok.begin(), ok.end(), ctx.format) == ok.end()) {
    throw UsageError("format '" + ctx.format + "' is not available for " +
                     std::string(command));
  }
}

json global_echo(const Global& g) {
  json j;
  j["constants"] = g.constants;
  j["constants_file"] = g.constants_file.empty() ? json(nullptr) : json(g.constants_file);
  j["fermions"] = g.fermions.empty() ? json("builtin:standard_model") : json(g.fermions);
  return j;
}

json envelope(std::string_view command, const Context& ctx, const Global& g,
              json input, json result) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["version"] = magvac::version();
  j["constants_mode"] = units::to_string(ctx.consts.mode);
  input["global"] = global_echo(g);
  j["input"] = std::move(input);
  j["result"] = std::move(result);
  return j;
}

void write_meta(std::ostream& err, const Global& g, std::string_view command) {
  if (g.no_meta) return;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  err << "# magvac " << magvac::version() << ' ' << command << ' ' << stamp << '\n';
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& header,
                   const std::vector<double>& row) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt_double(row[i]);
  out << '\n';
}

// ---- delta-e ------------------------------------------------------------

struct DeltaEArgs {
  double B = 0.0;
  double V = 0.0;
};

int cmd_delta_e(const DeltaEArgs& a, const Global& g, std::ostream& out) {
  const Context ctx = resolve(g);
  require_format(ctx, {"json", "csv"}, "delta-e");
  const auto& c = ctx.consts;
  const auto de = vacuum::delta_e(units::FieldStrength::from_gauss(a.B, c),
                                  units::Volume::from_cm3(a.V, c), ctx.fermions, c);
  const double expected = 2.0 * c.alpha * de.sum_charge_squared / (3.0 * M_PI);
  if (ctx.format == "csv") {
    write_csv_row(out,
                  {"B_gauss", "V_cm3", "delta_e_eV", "delta_e_erg", "field_energy_eV",
                   "field_energy_erg", "ratio"},
                  {a.B, a.V, de.delta_e_eV, de.delta_e_erg, de.field_energy_eV,
                   de.field_energy_erg, de.ratio});
    return kExitOk;
  }
  json input = {{"B_gauss", a.B}, {"V_cm3", a.V}};
  json result = {
      {"delta_e_eV", de.delta_e_eV},
      {"delta_e_erg", de.delta_e_erg},
      {"field_energy_eV", de.field_energy_eV},
      {"field_energy_erg", de.field_energy_erg},
      {"field_energy_convention", "B^2 V / 8pi (cgs), equal to B^2 V / 2 in Heaviside-Lorentz"},
      {"ratio", a.B > 0.0 && a.V > 0.0 ? json(de.ratio) : json(nullptr)},
      {"ratio_closed_form", expected},
      {"sum_charge_squared", de.sum_charge_squared},
  };
  out << envelope("delta-e", ctx, g, std::move(input), std::move(result)).dump(2) << '\n';
  return kExitOk;
}

// ---- screen -------------------------------------------------------------

int cmd_screen(double B, const Global& g, std::ostream& out) {
  const Context ctx = resolve(g);
  require_format(ctx, {"json", "csv"}, "screen");
  const auto& c = ctx.consts;
  const double f2 = vacuum::screening_factor_squared(c, ctx.fermions);
  const auto Bp = vacuum::screened_field(units::FieldStrength::from_gauss(B, c), c,
                                         ctx.fermions);
  const double ratio = std::sqrt(f2);
  if (ctx.format == "csv") {
    write_csv_row(out, {"B_gauss", "B_screened_gauss", "ratio", "ratio_squared"},
                  {B, Bp.gauss(), ratio, f2});
    return kExitOk;
  }
  json result = {{"B_gauss", B},
                 {"B_screened_gauss", Bp.gauss()},
                 {"ratio", ratio},
                 {"ratio_squared", f2},
                 {"sum_charge_squared", ctx.fermions.sum_charge_squared()}};
  out << envelope("screen", ctx, g, {{"B_gauss", B}}, std::move(result)).dump(2) << '\n';
  return kExitOk;
}

// ---- spectrum -----------------------------------------------------------

struct SpectrumArgs {
  double B = 0.0;
  int n0_max = 1;
  int bins = 64;
  double k_perp_max = 0.0;
  double k_par_max = 0.0;
  std::string mode = "lines";
  std::string measure = "paper";
  unsigned workers = 1;
};

emission::SpectrumMode parse_mode(const std::string& s) {
  return s == "profile" ? emission::SpectrumMode::profile : emission::SpectrumMode::lines;
}
emission::Measure parse_measure(const std::string& s) {
  return s == "exact" ? emission::Measure::exact : emission::Measure::paper;
}

int cmd_spectrum(const SpectrumArgs& a, const Global& g, std::ostream& out) {
  const Context ctx = resolve(g);
  require_format(ctx, {"json", "csv"}, "spectrum");
  const auto& c = ctx.consts;
  emission::SpectrumOptions opt;
  opt.mode = parse_mode(a.mode);
  opt.measure = parse_measure(a.measure);
  opt.k_par_max = a.k_par_max;
  opt.workers = std::max(1u, g.config_workers.value_or(a.workers));
  const auto table =
      emission::spectrum(units::FieldStrength::from_gauss(a.B, c), ctx.fermions, a.n0_max,
                         emission::Binning{a.bins, a.k_perp_max}, c, opt);
  if (ctx.format == "csv") {
    emission::write_csv(out, table);
    return kExitOk;
  }
  json input = {{"B_gauss", a.B},     {"n0_max", a.n0_max},       {"bins", a.bins},
                {"k_perp_max_eV", a.k_perp_max}, {"k_par_max_eV", a.k_par_max},
                {"mode", a.mode},     {"measure", a.measure}};
  json result = json::parse(emission::to_json(table));
  result["total_number_rate"] = table.total_number_rate();
  result["total_energy_rate"] = table.total_energy_rate();
  out << envelope("spectrum", ctx, g, std::move(input), std::move(result)).dump(2) << '\n';
  return kExitOk;
}

// ---- sample -------------------------------------------------------------

struct SampleArgs {
  double B = 0.0;
  int n0_max = 1;
  std::uint64_t events = 0;
  double n_bar = 0.0;
  std::uint64_t seed = 0;
  double k_par_max = 0.0;
  std::string measure = "paper";
  std::size_t grid = 1024;
  unsigned workers = 1;
  CLI::Option* events_opt = nullptr;
  CLI::Option* n_bar_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int cmd_sample(const SampleArgs& a, const Global& g, std::ostream& out) {
  Context ctx = resolve(g);
  if (!ctx.format_explicit) ctx.format = "jsonl";
  require_format(ctx, {"jsonl"}, "sample");
  const auto& c = ctx.consts;

  bool generated = false;
  std::uint64_t seed = a.seed;
  if (a.seed_opt->count() == 0) {
    if (g.config_seed) {
      seed = *g.config_seed;
    } else {
      seed = fresh_seed();
      generated = true;
    }
  }

  std::uint64_t count = a.events;
  double n_bar_used = static_cast<double>(a.events);
  if (a.n_bar_opt->count() > 0) {
    n_bar_used = a.n_bar;
    count = sampler::sample_count(a.n_bar, seed);
  }

  emission::SpectrumOptions sopt;
  sopt.measure = parse_measure(a.measure);
  const unsigned workers = std::max(1u, g.config_workers.value_or(a.workers));
  sopt.workers = workers;
  const auto table = emission::spectrum(units::FieldStrength::from_gauss(a.B, c),
                                        ctx.fermions, a.n0_max, emission::Binning{1, 0.0},
                                        c, sopt);
  sampler::SamplerOptions opt;
  opt.k_par_max = a.k_par_max;
  opt.grid = a.grid;
  opt.workers = workers;
  auto run = sampler::sample_events(table, count, seed, c, opt);
  run.n_bar_used = n_bar_used;

  json header = json::parse(sampler::jsonl_header(run));
  header["command"] = "sample";
  header["version"] = magvac::version();
  header["seed_generated"] = generated;
  json input = {{"B_gauss", a.B},
                {"n0_max", a.n0_max},
                {"events", a.events_opt->count() ? json(a.events) : json(nullptr)},
                {"n_bar", a.n_bar_opt->count() ? json(a.n_bar) : json(nullptr)},
                {"k_par_max_eV", a.k_par_max},
                {"measure", a.measure},
                {"grid", a.grid}};
  input["global"] = global_echo(g);
  header["input"] = std::move(input);
  out << header.dump() << '\n';
  sampler::write_event_lines(out, run);
  return kExitOk;
}

// ---- astro --------------------------------------------------------------

struct AstroArgs {
  double B = 1e15;
  double radius_cm = 1e6;
  double mass_g = 0.0;  // 0 -> one solar mass
  std::string volume_model = "cube_of_radius";
  double probe_mass_g = 0.0;  // 0 -> electron
  double speed_fraction = 1.0;
};

json nan_to_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

int cmd_astro(const AstroArgs& a, const Global& g, std::ostream& out) {
  const Context ctx = resolve(g);
  require_format(ctx, {"json"}, "astro");
  const auto& c = ctx.consts;
  astro::CompactObject obj;
  obj.radius_cm = a.radius_cm;
  obj.mass_g = a.mass_g > 0.0 ? a.mass_g : c.M_sun_g;
  obj.B_surface_gauss = a.B;
  obj.volume_model = astro::volume_model_from_string(a.volume_model);
  const double probe = a.probe_mass_g > 0.0 ? a.probe_mass_g : c.m_e_g;

  const auto rel = astro::release_estimate(obj, ctx.fermions, c);
  const auto force = astro::force_comparison(obj, probe, a.speed_fraction, c);

  json input = {{"B_surface_gauss", a.B},     {"radius_cm", obj.radius_cm},
                {"mass_g", obj.mass_g},       {"volume_model", a.volume_model},
                {"probe_mass_g", probe},      {"speed_fraction_c", a.speed_fraction}};
  json result;
  result["release"] = {
      {"volume_cm3", rel.volume_cm3},
      {"field_energy_erg", rel.field_energy_erg},
      {"delta_e_erg", rel.delta_e_erg},
      {"ratio", nan_to_null(rel.ratio)},
      {"log10_dev_field_energy_from_band", nan_to_null(rel.log10_dev_field_energy)},
      {"log10_dev_delta_e_from_band", nan_to_null(rel.log10_dev_delta_e)},
  };
  result["force"] = {
      {"F_grav_N", force.F_grav_N},
      {"F_mag_N", force.F_mag_N},
      {"log10_dev_grav", nan_to_null(force.log10_dev_grav)},
      {"log10_dev_mag", nan_to_null(force.log10_dev_mag)},
  };
  result["anchors"] = {
      {"claim", "quoted order-of-magnitude figures, not derived here"},
      {"release_band_erg", {astro::Anchors::release_band_lo_erg,
                            astro::Anchors::release_band_hi_erg}},
      {"F_grav_N", astro::Anchors::gravity_force_N},
      {"F_mag_N", astro::Anchors::magnetic_force_N},
      {"F_mag_quoted_at_gauss", astro::Anchors::magnetic_force_field_gauss},
  };
  out << envelope("astro", ctx, g, std::move(input), std::move(result)).dump(2) << '\n';
  return kExitOk;
}

// ---- check --------------------------------------------------------------

struct CheckRow {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  std::string detail;
  bool pass() const { return std::isfinite(residual) && residual < threshold; }
};

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

CheckRow check_constants(const Global& g) {
  CheckRow row{"constants", 0.0, 1e-6, ""};
  try {
    const auto c = resolve_constants(g);
    // B_c from m_e^2 = e B_c with the CODATA coupling
    const double bc = c.m_e_eV * c.m_e_eV / (std::sqrt(units::kCodataAlpha) * c.gauss_in_eV2());
    const double alpha_dev = rel_err(c.alpha, units::kCodataAlpha);
    row.residual = rel_err(c.B_c_gauss, bc);
    row.detail = "B_c vs m_e^2/(sqrt(alpha) G); alpha within 1e-3 of CODATA";
    if (!(alpha_dev < 1e-3)) {
      row.residual = std::numeric_limits<double>::infinity();
      row.detail = "alpha deviates from CODATA by " + fmt_double(alpha_dev);
    }
  } catch (const std::exception& e) {
    row.residual = std::numeric_limits<double>::infinity();
    row.detail = e.what();
  }
  return row;
}

CheckRow check_zeta_closed_form() {
  double worst = 0.0;
  for (double q : {0.1, 0.5, 1.0, 2.5, 10.0, 100.0}) {
    worst = std::max(worst, std::abs(specfun::hurwitz_zeta(-1.0, q) + 0.5 * specfun::bernoulli2(q)));
  }
  return {"zeta_closed_form", worst, 1e-12, "max |zeta(-1,q) + B2(q)/2|"};
}

CheckRow check_zeta_reduction() {
  double worst = 0.0;
  for (double z : {-1.5, -2.0, -3.0}) {
    worst = std::max(worst, vacuum::zeta_reduction_check(1.0, 0.5, z).residual);
  }
  return {"zeta_reduction", worst, 1e-10, "level series vs Hurwitz form, z in {-1.5,-2,-3}"};
}

CheckRow check_fourier_hermite() {
  double worst = 0.0;
  const double eB = 1.0;
  for (int n = 0; n <= 4; ++n) {
    for (double kx : {0.3, 1.0, 2.2}) {
      for (double py : {-1.0, 0.0, 1.7}) {
        worst = std::max(worst, emission::fourier_hermite_check(n, kx, eB, py).residual);
      }
    }
  }
  return {"fourier_hermite", worst, 1e-6, "n <= 4, 9 (k_x, p_y) pairs"};
}

CheckRow check_mass_cancellation() {
  const double eB = 1.0, V = 1.0;
  const double target = V * eB * eB / (12.0 * M_PI * M_PI);
  double worst = 0.0;
  for (double m : {0.1, 1.0, 511000.0}) {
    const auto d = vacuum::regularized_energy_landau(m, eB, V) - vacuum::regularized_energy_free(m, V);
    worst = std::max(worst, rel_err(d.pole_coeff(), target));
  }
  return {"mass_cancellation", worst, 1e-12, "pole(landau) - pole(free) vs V (eB)^2/12pi^2"};
}

CheckRow check_kernel_first_line(const units::PhysicalConstants& c) {
  const auto fermions = vacuum::FermionSet::electron_only(c);
  const double eB = 0.01 * c.m_e_eV * c.m_e_eV;
  double worst = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double k = 0.05 * i * std::sqrt(eB);
    worst = std::max(worst, rel_err(emission::rate_kernel(k, 1, fermions, eB, c),
                                    emission::rate_kernel_first_line(k, fermions, eB, c)));
  }
  return {"kernel_first_line", worst, 1e-12, "general kernel at n0 = 1 vs closed form"};
}

CheckRow check_poisson() {
  double worst = 0.0;
  for (double nb : {0.5, 4.0, 50.0}) {
    const auto n_max = static_cast<long long>(std::ceil(nb + 40.0 * std::sqrt(nb + 1.0) + 10.0));
    double s = 0.0;
    for (long long n = 0; n <= n_max; ++n) s += emission::poisson_probability(nb, n);
    worst = std::max(worst, std::abs(1.0 - s));
  }
  return {"poisson_normalization", worst, 1e-12, "1 - sum pmf"};
}

CheckRow check_philox() {
  using P = rng::Philox4x32;
  struct Kat {
    P::Counter ctr;
    P::Key key;
    P::Counter expect;
  };
  const std::array<Kat, 3> kats{{
      {{0, 0, 0, 0}, {0, 0}, {0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}},
      {{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
       {0xffffffff, 0xffffffff},
       {0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}},
      {{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
       {0xa4093822, 0x299f31d0},
       {0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}},
  }};
  double bad = 0.0;
  for (const auto& k : kats) bad += P::generate(k.ctr, k.key) == k.expect ? 0.0 : 1.0;
  return {"philox_known_answers", bad, 0.5, "mismatching known-answer vectors"};
}

int cmd_check(const Global& g, std::ostream& out, std::ostream& err) {
  std::vector<CheckRow> rows;
  rows.push_back(check_constants(g));
  rows.push_back(check_zeta_closed_form());
  rows.push_back(check_zeta_reduction());
  rows.push_back(check_fourier_hermite());
  rows.push_back(check_mass_cancellation());
  units::PhysicalConstants c;
  try {
    c = resolve_constants(g);
  } catch (const std::exception&) {
    c = units::PhysicalConstants::paper();
  }
  rows.push_back(check_kernel_first_line(c));
  rows.push_back(check_poisson());
  rows.push_back(check_philox());

  std::vector<std::string> failed;
  for (const auto& r : rows) {
    if (!r.pass()) failed.push_back(r.name);
  }
  const bool csv = g.format == "csv";
  if (!csv && g.format != "json") throw UsageError("format '" + g.format + "' is not available for check");
  if (csv) {
    out << "check,residual,threshold,pass\n";
    for (const auto& r : rows) {
      out << r.name << ',' << fmt_double(r.residual) << ',' << fmt_double(r.threshold) << ','
          << (r.pass() ? "true" : "false") << '\n';
    }
  } else {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "check";
    j["version"] = magvac::version();
    j["constants_mode"] = g.constants;
    j["input"] = {{"global", global_echo(g)}};
    json list = json::array();
    for (const auto& r : rows) {
      list.push_back({{"name", r.name},
                      {"residual", nan_to_null(r.residual)},
                      {"threshold", r.threshold},
                      {"pass", r.pass()},
                      {"detail", r.detail}});
    }
    j["result"] = {{"checks", list}, {"all_pass", failed.empty()}};
    out << j.dump(2) << '\n';
  }
  if (!failed.empty()) {
    err << "check failed:";
    for (const auto& f : failed) err << ' ' << f;
    err << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Magnetic vacuum energy, screening and photon emission calculator", "magvac"};
  app.set_version_flag("--version", std::string(magvac::version()));
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--config", g.config, "JSON file with defaults for the global flags")
      ->check(CLI::ExistingFile);
  g.constants_opt = app.add_option("--constants", g.constants, "Constants mode")
                        ->check(CLI::IsMember({"paper", "modern"}));
  g.constants_file_opt =
      app.add_option("--constants-file", g.constants_file, "JSON constants table override");
  g.fermions_opt = app.add_option("--fermions", g.fermions, "JSON fermion set (default: built-in)");
  g.format_opt = app.add_option("--format", g.format, "Output format")
                     ->check(CLI::IsMember({"json", "csv", "jsonl"}));
  app.add_flag("--no-meta", g.no_meta, "Suppress the timestamped metadata line on stderr");

  std::function<int()> action;

  DeltaEArgs de;
  auto* sub_de = app.add_subcommand("delta-e", "Vacuum energy released by switching on B in volume V");
  sub_de->add_option("--B", de.B, "Field in Gauss")->required()->check(CLI::NonNegativeNumber);
  sub_de->add_option("--V", de.V, "Volume in cm^3")->required()->check(CLI::PositiveNumber);
  sub_de->callback([&] { action = [&] { return cmd_delta_e(de, g, out); }; });

  double screen_B = 0.0;
  auto* sub_sc = app.add_subcommand("screen", "Screened field B' = B sqrt(1 - 2 alpha sum Q^2 / 3pi)");
  sub_sc->add_option("--B", screen_B, "Field in Gauss")->required()->check(CLI::NonNegativeNumber);
  sub_sc->callback([&] { action = [&] { return cmd_screen(screen_B, g, out); }; });

  SpectrumArgs sp;
  auto* sub_sp = app.add_subcommand("spectrum", "Photon number and energy spectrum binned in k_perp");
  sub_sp->add_option("--B", sp.B, "Field in Gauss")->required()->check(CLI::NonNegativeNumber);
  sub_sp->add_option("--n0-max", sp.n0_max, "Highest line index")->check(CLI::Range(1, 100000));
  sub_sp->add_option("--bins", sp.bins, "Number of k_perp bins")->check(CLI::PositiveNumber);
  sub_sp->add_option("--k-perp-max", sp.k_perp_max, "Upper k_perp edge in eV (0: automatic)")
      ->check(CLI::NonNegativeNumber);
  sub_sp->add_option("--k-par-max", sp.k_par_max, "|k_par| cut in eV (0: mode default)")
      ->check(CLI::NonNegativeNumber);
  sub_sp->add_option("--mode", sp.mode, "lines or profile")->check(CLI::IsMember({"lines", "profile"}));
  sub_sp->add_option("--measure", sp.measure, "paper or exact phase-space measure")
      ->check(CLI::IsMember({"paper", "exact"}));
  sub_sp->add_option("--workers", sp.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  sub_sp->callback([&] { action = [&] { return cmd_spectrum(sp, g, out); }; });

  SampleArgs sa;
  auto* sub_sa = app.add_subcommand("sample", "Monte Carlo photon events as JSONL");
  sub_sa->add_option("--B", sa.B, "Field in Gauss")->required()->check(CLI::NonNegativeNumber);
  sub_sa->add_option("--n0-max", sa.n0_max, "Highest line index")->check(CLI::Range(1, 100000));
  sa.events_opt = sub_sa->add_option("--events", sa.events, "Fixed number of events");
  sa.n_bar_opt = sub_sa->add_option("--n-bar", sa.n_bar, "Poisson mean; the count is drawn")
                     ->check(CLI::NonNegativeNumber);
  sa.events_opt->excludes(sa.n_bar_opt);
  sa.seed_opt = sub_sa->add_option("--seed", sa.seed, "64-bit seed (default: generated)");
  sub_sa->add_option("--k-par-max", sa.k_par_max, "|k_par| support in eV (0: 3 sqrt(eB))")
      ->check(CLI::NonNegativeNumber);
  sub_sa->add_option("--measure", sa.measure, "paper or exact")->check(CLI::IsMember({"paper", "exact"}));
  sub_sa->add_option("--grid", sa.grid, "Angle cells per line")->check(CLI::Range(1, 1 << 20));
  sub_sa->add_option("--workers", sa.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  sub_sa->callback([&] {
    if (sa.events_opt->count() + sa.n_bar_opt->count() != 1) {
      throw CLI::ValidationError("sample", "exactly one of --events or --n-bar is required");
    }
    action = [&] { return cmd_sample(sa, g, out); };
  });

  AstroArgs as;
  auto* sub_as = app.add_subcommand("astro", "Neutron-star release estimate and force comparison");
  sub_as->add_option("--B", as.B, "Surface field in Gauss")->check(CLI::NonNegativeNumber);
  sub_as->add_option("--radius-cm", as.radius_cm, "Radius in cm")->check(CLI::PositiveNumber);
  sub_as->add_option("--mass-g", as.mass_g, "Mass in g (default: one solar mass)")
      ->check(CLI::PositiveNumber);
  sub_as->add_option("--volume-model", as.volume_model, "cube_of_radius or sphere")
      ->check(CLI::IsMember({"cube_of_radius", "sphere"}));
  sub_as->add_option("--probe-mass-g", as.probe_mass_g, "Probe mass in g (default: electron)")
      ->check(CLI::PositiveNumber);
  sub_as->add_option("--speed-fraction", as.speed_fraction, "Probe speed over c")
      ->check(CLI::Range(0.0, 1.0));
  sub_as->callback([&] { action = [&] { return cmd_astro(as, g, out); }; });

  auto* sub_ck = app.add_subcommand("check", "Numerical self-checks; exit 1 names the failures");
  sub_ck->callback([&] { action = [&] { return cmd_check(g, out, err); }; });

  std::vector<std::string> store;
  store.reserve(args.size() + 1);
  store.emplace_back("magvac");
  store.insert(store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    apply_config_file(g);
    write_meta(err, g, command);
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace magvac::cli
