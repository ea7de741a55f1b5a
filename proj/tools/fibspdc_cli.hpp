#pragma once

// Subcommand implementations for the `fibspdc` command-line tool.
//
// Every command prints exactly one JSON object on `out`. Failures print
// {code, message, offending_parameter, exit_code} and return
//   2 for usage errors, 3 for data-format errors, 4 for numeric/domain errors.

#include <array>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "fibspdc/fibspdc.hpp"

namespace fibspdc::cli {

inline constexpr std::string_view kToolName = "fibspdc";
inline constexpr std::string_view kToolVersion = "0.1.0";

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::DataFormat: return 3;
    case ErrorKind::Domain: return 4;
  }
  return 4;
}

inline std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::IoError, "SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

inline std::string read_file(const std::string& path, const std::string& parameter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'", parameter);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::ofstream open_output(const std::string& path, const std::string& parameter,
                                 bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path + "'", parameter);
  return out;
}

/// Tracks hashed inputs and written outputs for the result metadata.
class RunRecord {
 public:
  explicit RunRecord(std::string command) : command_(std::move(command)) {}

  std::string load(const std::string& path, const std::string& parameter) {
    auto bytes = read_file(path, parameter);
    inputs_[path] = "sha256:" + sha256_hex(bytes);
    return bytes;
  }

  void wrote(const std::string& path) { outputs_.push_back(path); }

  json envelope(json result) const {
    return {{"tool", kToolName},     {"version", kToolVersion}, {"command", command_},
            {"inputs", inputs_},     {"outputs", outputs_},     {"result", std::move(result)}};
  }

 private:
  std::string command_;
  json inputs_ = json::object();
  std::vector<std::string> outputs_;
};

inline json error_json(const std::string& code, const std::string& message,
                       const std::string& parameter, int exit) {
  return {{"code", code},
          {"message", message},
          {"offending_parameter", parameter.empty() ? json(nullptr) : json(parameter)},
          {"exit_code", exit}};
}

inline void usage_check(bool ok, const std::string& message, const std::string& parameter) {
  if (!ok) throw Error(Errc::UsageError, message, parameter);
}

inline TimestampFile load_timestamps(RunRecord& run, const std::string& path) {
  const auto bytes = run.load(path, "--input");
  std::istringstream in(bytes);
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? read_timestamp_csv(in) : read_pts(in);
}

inline std::vector<DataPoint> load_points(RunRecord& run, const std::string& path) {
  const auto bytes = run.load(path, "--input");
  std::istringstream in(bytes);
  std::string line;
  bool header = false;
  std::size_t columns = 0;
  std::size_t line_no = 0;
  std::vector<DataPoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = detail::split(body);
    if (!header) {
      if (fields.size() < 2 || fields.size() > 3) {
        throw Error(Errc::MalformedHeader, "point files need 2 or 3 columns (x,y[,y_error])", "--input");
      }
      columns = fields.size();
      header = true;
      continue;
    }
    if (fields.size() != columns) {
      throw Error(Errc::MalformedRow, "line " + std::to_string(line_no) + ": wrong field count", "--input");
    }
    DataPoint p;
    const auto x = detail::parse_double(fields[0]);
    const auto y = detail::parse_double(fields[1]);
    if (!x || !y) throw Error(Errc::MalformedRow, "line " + std::to_string(line_no) + ": non-numeric", "--input");
    p.x = *x;
    p.y = *y;
    if (columns == 3) {
      const auto e = detail::parse_double(fields[2]);
      if (!e) throw Error(Errc::MalformedRow, "line " + std::to_string(line_no) + ": non-numeric", "--input");
      p.y_error = *e;
    }
    points.push_back(p);
  }
  if (!header) throw Error(Errc::MalformedHeader, "empty point file", "--input");
  return points;
}

struct StreamSelection {
  std::string input;
  int ch1 = 0;
  int ch2 = 1;
  std::string window = "1.5ns";
  std::string offset = "0ps";
  std::string accidental_offset = "100ns";
  std::string accidentals = "shifted";

  void add_to(CLI::App* cmd, bool require_input = true) {
    auto* in = cmd->add_option("--input", input, "timestamp file (.pts or .csv)");
    if (require_input) in->required();
    cmd->add_option("--ch1", ch1, "first detector channel");
    cmd->add_option("--ch2", ch2, "second detector channel");
    cmd->add_option("--window", window, "coincidence window, e.g. 1.5ns");
    cmd->add_option("--offset", offset, "delay of channel 2 relative to channel 1");
    cmd->add_option("--accidental-offset", accidental_offset, "shift used for the accidental window");
    cmd->add_option("--accidentals", accidentals, "accidental estimate: shifted | analytic");
  }

  AccidentalMethod method() const {
    if (accidentals == "shifted") return AccidentalMethod::Shifted;
    if (accidentals == "analytic") return AccidentalMethod::Analytic;
    throw Error(Errc::UsageError, "--accidentals must be 'shifted' or 'analytic'", "--accidentals");
  }
};

inline std::pair<const TimestampStream*, const TimestampStream*> pick_channels(
    const TimestampFile& file, int ch1, int ch2) {
  usage_check(ch1 >= 0 && ch2 >= 0 && ch1 != ch2, "--ch1 and --ch2 must be distinct channels", "--ch2");
  return {&file.channel(static_cast<std::size_t>(ch1)), &file.channel(static_cast<std::size_t>(ch2))};
}

inline std::string sidecar_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.extension() == ".csv") return p.replace_extension(".json").string();
  return out + ".json";
}

inline int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Design and analysis toolkit for thin-crystal fiber-coupled photon-pair sources",
               std::string(kToolName)};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // sweep
  struct {
    std::string dispersion, pump = "405nm", signal = "810nm", idler;
    std::string pol_p = "y", pol_s = "y", pol_i = "y";
    std::string l_min = "0nm", l_max = "2000nm", refine = "0.01nm";
    long long steps = 2001;
    bool absorbing = false;
    std::string out, sidecar;
  } sw;
  auto* sweep = app.add_subcommand("sweep", "relative pair rate versus crystal thickness");
  sweep->add_option("--dispersion", sw.dispersion, "dispersion CSV")->required();
  sweep->add_option("--pump", sw.pump);
  sweep->add_option("--signal", sw.signal);
  sweep->add_option("--idler", sw.idler, "defaults to energy conservation");
  sweep->add_option("--pol-pump", sw.pol_p);
  sweep->add_option("--pol-signal", sw.pol_s);
  sweep->add_option("--pol-idler", sw.pol_i);
  sweep->add_option("--thickness-min", sw.l_min);
  sweep->add_option("--thickness-max", sw.l_max);
  sweep->add_option("--steps", sw.steps);
  sweep->add_option("--refine-tolerance", sw.refine);
  sweep->add_flag("--absorbing", sw.absorbing, "use the complex phase mismatch");
  sweep->add_option("--out", sw.out, "sweep CSV")->required();
  sweep->add_option("--sidecar", sw.sidecar, "JSON sidecar (default: alongside --out)");

  // simulate
  struct {
    std::string pair_rate, dark1 = "0Hz", dark2 = "0Hz", jitter = "350ps", dead_time = "22ns";
    std::string duration, window = "1.5ns", out, ground_truth;
    double eta1 = 0.0, eta2 = 0.0;
    std::uint64_t seed = 0;
  } sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo two-detector timestamp streams");
  simulate_cmd->add_option("--pair-rate", sim.pair_rate, "generated pair rate, e.g. 1kHz")->required();
  simulate_cmd->add_option("--eta1", sim.eta1, "arm-1 detection efficiency")->required();
  simulate_cmd->add_option("--eta2", sim.eta2, "arm-2 detection efficiency")->required();
  simulate_cmd->add_option("--dark1", sim.dark1);
  simulate_cmd->add_option("--dark2", sim.dark2);
  simulate_cmd->add_option("--jitter", sim.jitter, "Gaussian jitter sigma per detector");
  simulate_cmd->add_option("--dead-time", sim.dead_time, "non-paralyzable dead time");
  simulate_cmd->add_option("--duration", sim.duration, "acquisition time, e.g. 120s")->required();
  simulate_cmd->add_option("--seed", sim.seed, "RNG seed")->required();
  simulate_cmd->add_option("--window", sim.window, "window for the reported expectations");
  simulate_cmd->add_option("--out", sim.out, "output .pts (or .csv)")->required();
  simulate_cmd->add_option("--ground-truth", sim.ground_truth,
                           "sidecar path (default: ground_truth.json next to --out)");

  // correlate
  StreamSelection corr;
  std::string chunk;
  unsigned threads = 0;
  auto* correlate = app.add_subcommand("correlate", "coincidences and accidentals");
  corr.add_to(correlate);
  correlate->add_option("--chunk", chunk, "use the chunked parallel counter with this span");
  correlate->add_option("--threads", threads, "worker threads for --chunk (0 = all cores)");

  // g2
  StreamSelection g2sel;
  std::string bin = "60ps", tau_max = "30ns", g2_out;
  auto* g2 = app.add_subcommand("g2", "arrival-time difference histogram");
  g2->add_option("--input", g2sel.input)->required();
  g2->add_option("--ch1", g2sel.ch1);
  g2->add_option("--ch2", g2sel.ch2);
  g2->add_option("--bin", bin, "bin width");
  g2->add_option("--tau-max", tau_max, "histogram half-span (multiple of --bin)");
  g2->add_option("--out", g2_out, "histogram CSV")->required();

  // metrics
  StreamSelection met;
  std::string cc_rate, singles1, singles2, dark1 = "0Hz", dark2 = "0Hz", metrics_out;
  auto* metrics_cmd = app.add_subcommand("metrics", "CAR and pair collection efficiency");
  met.add_to(metrics_cmd, false);
  metrics_cmd->add_option("--coincidence-rate", cc_rate, "rate mode: coincidence rate");
  metrics_cmd->add_option("--singles1", singles1, "rate mode: detector-1 singles");
  metrics_cmd->add_option("--singles2", singles2, "rate mode: detector-2 singles");
  metrics_cmd->add_option("--dark1", dark1, "detector-1 dark rate to subtract");
  metrics_cmd->add_option("--dark2", dark2, "detector-2 dark rate to subtract");
  metrics_cmd->add_option("--out", metrics_out, "write the metrics report JSON here too");

  // fits
  std::string power_input, pol_input;
  auto* fit_power = app.add_subcommand("fit-power", "weighted straight-line fit (rate vs pump power)");
  fit_power->add_option("--input", power_input, "CSV x,y[,y_error]")->required();
  auto* fit_pol = app.add_subcommand("fit-polarization", "offset + A cos^2(theta - theta0) fit");
  fit_pol->add_option("--input", pol_input, "CSV theta_deg,rate[,rate_error]")->required();

  // optimal-waist
  std::string collection_waist, pump_waist, catalog, fiber_name;
  auto* waist = app.add_subcommand("optimal-waist", "pump waist matched to a collection mode");
  waist->add_option("--collection-waist", collection_waist, "e.g. 2.3um")->required();
  waist->add_option("--pump-waist", pump_waist, "report the overlap for this pump waist");
  waist->add_option("--catalog", catalog, "fiber catalog JSON");
  waist->add_option("--fiber", fiber_name, "fiber name in --catalog");

  std::vector<const char*> argv{kToolName.data()};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help() << '\n';
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << json{{"tool", kToolName}, {"version", kToolVersion}}.dump() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_json("UsageError", e.what(), {}, 2).dump() << '\n';
    return 2;
  }

  try {
    json result;
    if (sweep->parsed()) {
      RunRecord run("sweep");
      const double l_min = units::length_nm(sw.l_min, "--thickness-min");
      const double l_max = units::length_nm(sw.l_max, "--thickness-max");
      usage_check(l_min >= 0.0, "--thickness-min must be >= 0", "--thickness-min");
      usage_check(l_max > l_min, "--thickness-max must exceed --thickness-min", "--thickness-max");
      usage_check(sw.steps >= 2, "--steps must be >= 2", "--steps");
      const double tol = units::length_nm(sw.refine, "--refine-tolerance");
      usage_check(tol > 0.0, "--refine-tolerance must be > 0", "--refine-tolerance");
      const double lp = units::length_nm(sw.pump, "--pump");
      const double ls = units::length_nm(sw.signal, "--signal");
      const auto axis = [](const std::string& s, const char* param) {
        try {
          return parse_axis(s);
        } catch (const Error& e) {
          throw Error(Errc::UsageError, e.what(), param);
        }
      };
      SpdcConfig config;
      if (sw.idler.empty()) {
        config = SpdcConfig::from_pump_signal(lp, ls);
      } else {
        config.lambda_p = lp;
        config.lambda_s = ls;
        config.lambda_i = units::length_nm(sw.idler, "--idler");
      }
      config.pol_p = axis(sw.pol_p, "--pol-pump");
      config.pol_s = axis(sw.pol_s, "--pol-signal");
      config.pol_i = axis(sw.pol_i, "--pol-idler");
      config.validate();

      std::istringstream table_in(run.load(sw.dispersion, "--dispersion"));
      const auto table = load_table(table_in);
      const auto dk = phase_mismatch(config, table);
      const auto sweep_result = thickness_sweep(dk, l_min, l_max, static_cast<std::size_t>(sw.steps),
                                                sw.absorbing, tol);
      {
        auto csv = open_output(sw.out, "--out");
        write_sweep_csv(csv, sweep_result);
      }
      run.wrote(sw.out);
      const auto sidecar = sw.sidecar.empty() ? sidecar_path(sw.out) : sw.sidecar;
      {
        auto js = open_output(sidecar, "--sidecar");
        js << sweep_sidecar(sweep_result).dump(2) << '\n';
      }
      run.wrote(sidecar);

      result = sweep_sidecar(sweep_result);
      result["dk_real_rad_per_nm"] = dk.value.real();
      result["dk_imag_rad_per_nm"] = dk.value.imag();
      result["coherence_length_nm"] =
          dk.value.real() != 0.0 ? json(coherence_length(dk.value.real())) : json(nullptr);
      result["lambda_nm"] = {config.lambda_p, config.lambda_s, config.lambda_i};
      result["polarization"] = std::string{axis_name(config.pol_p), axis_name(config.pol_s),
                                           axis_name(config.pol_i)};
      result["steps"] = sw.steps;
      out << run.envelope(std::move(result)).dump() << '\n';
      return 0;
    }

    if (simulate_cmd->parsed()) {
      RunRecord run("simulate");
      SourceModel model;
      model.pair_rate_hz = units::rate_hz(sim.pair_rate, "--pair-rate");
      model.eta1 = sim.eta1;
      model.eta2 = sim.eta2;
      model.dark1_hz = units::rate_hz(sim.dark1, "--dark1");
      model.dark2_hz = units::rate_hz(sim.dark2, "--dark2");
      model.jitter_sigma_ps = static_cast<double>(units::time_ps(sim.jitter, "--jitter"));
      model.dead_time_ps = static_cast<double>(units::time_ps(sim.dead_time, "--dead-time"));
      model.duration_ps = units::time_ps(sim.duration, "--duration");
      model.seed = sim.seed;
      try {
        model.validate();
      } catch (const Error& e) {
        throw Error(Errc::UsageError, e.what(), "--" + e.parameter());
      }
      const auto window = units::time_ps(sim.window, "--window");
      usage_check(window > 0, "--window must be > 0", "--window");

      const auto s = simulate(model);
      const std::array<TimestampStream, 2> streams{s.channel1, s.channel2};
      {
        const bool csv = sim.out.size() >= 4 && sim.out.compare(sim.out.size() - 4, 4, ".csv") == 0;
        auto f = open_output(sim.out, "--out", !csv);
        if (csv) {
          write_timestamp_csv(f, streams, model.duration_ps);
        } else {
          write_pts(f, streams, model.duration_ps);
        }
      }
      run.wrote(sim.out);
      const auto gt_path =
          sim.ground_truth.empty()
              ? (std::filesystem::path(sim.out).parent_path() / "ground_truth.json").string()
              : sim.ground_truth;
      {
        auto f = open_output(gt_path, "--ground-truth");
        f << ground_truth_sidecar(model, s.truth).dump(2) << '\n';
      }
      run.wrote(gt_path);
      result = ground_truth_sidecar(model, s.truth);
      result["expectations"] = to_json(analytic_expectations(model, window));
      result["expectations"]["window_ps"] = window;
      out << run.envelope(std::move(result)).dump() << '\n';
      return 0;
    }

    if (correlate->parsed()) {
      RunRecord run("correlate");
      const auto window = units::time_ps(corr.window, "--window");
      usage_check(window > 0, "--window must be > 0", "--window");
      const auto offset = units::time_ps(corr.offset, "--offset");
      const auto acc_offset = units::time_ps(corr.accidental_offset, "--accidental-offset");
      const auto method = corr.method();
      const auto file = load_timestamps(run, corr.input);
      const auto [s1, s2] = pick_channels(file, corr.ch1, corr.ch2);
      auto r = analyze_coincidences(*s1, *s2, window, offset, acc_offset, method);
      if (!chunk.empty()) {
        const auto span = units::time_ps(chunk, "--chunk");
        r.coincidences = chunked_coincidence_count(*s1, *s2, window, offset, span, threads);
      }
      result = to_json(r);
      result["counter"] = chunk.empty() ? "sequential" : "chunked";
      out << run.envelope(std::move(result)).dump() << '\n';
      return 0;
    }

    if (g2->parsed()) {
      RunRecord run("g2");
      const auto bw = units::time_ps(bin, "--bin");
      const auto tmax = units::time_ps(tau_max, "--tau-max");
      usage_check(bw > 0, "--bin must be > 0", "--bin");
      usage_check(tmax > 0 && tmax % bw == 0, "--tau-max must be a positive multiple of --bin",
                  "--tau-max");
      const auto file = load_timestamps(run, g2sel.input);
      const auto [s1, s2] = pick_channels(file, g2sel.ch1, g2sel.ch2);
      const auto h = g2_histogram(*s1, *s2, bw, tmax);
      {
        auto f = open_output(g2_out, "--out");
        write_g2_csv(f, h);
      }
      run.wrote(g2_out);
      std::size_t peak = 0;
      for (std::size_t k = 1; k < h.counts.size(); ++k) {
        if (h.counts[k] > h.counts[peak]) peak = k;
      }
      result = {{"bin_width_ps", h.bin_width},
                {"tau_min_ps", h.tau_min},
                {"tau_max_ps", h.tau_max},
                {"bins", h.counts.size()},
                {"total_pairs", h.total()},
                {"normalization", h.normalization},
                {"peak_tau_ps", h.bin_center(peak)},
                {"peak_counts", h.counts[peak]},
                {"peak_g2", h.normalization > 0.0
                                ? json(static_cast<double>(h.counts[peak]) / h.normalization)
                                : json(nullptr)}};
      out << run.envelope(std::move(result)).dump() << '\n';
      return 0;
    }

    if (metrics_cmd->parsed()) {
      RunRecord run("metrics");
      const double d1 = units::rate_hz(dark1, "--dark1");
      const double d2 = units::rate_hz(dark2, "--dark2");
      usage_check(d1 >= 0.0 && d2 >= 0.0, "dark rates must be >= 0", "--dark1");
      const bool rate_mode = !cc_rate.empty() || !singles1.empty() || !singles2.empty();
      usage_check(rate_mode != !met.input.empty(),
                  "give either --input or all of --coincidence-rate/--singles1/--singles2",
                  "--input");
      if (rate_mode) {
        usage_check(!cc_rate.empty() && !singles1.empty() && !singles2.empty(),
                    "rate mode needs --coincidence-rate, --singles1 and --singles2",
                    cc_rate.empty() ? "--coincidence-rate" : (singles1.empty() ? "--singles1" : "--singles2"));
        const double rcc = units::rate_hz(cc_rate, "--coincidence-rate");
        const double r1_raw = units::rate_hz(singles1, "--singles1");
        const double r2_raw = units::rate_hz(singles2, "--singles2");
        const auto r1 = subtract_darks(r1_raw, d1);
        const auto r2 = subtract_darks(r2_raw, d2);
        result = {{"coincidence_rate_hz", rcc},
                  {"singles_1_raw_hz", r1_raw},
                  {"singles_2_raw_hz", r2_raw},
                  {"singles_1_hz", r1.rate},
                  {"singles_2_hz", r2.rate},
                  {"singles_clamped", r1.clamped || r2.clamped},
                  {"singles_geomean_hz", std::sqrt(r1.rate * r2.rate)},
                  {"pair_efficiency", pair_efficiency(rcc, r1.rate, r2.rate)}};
      } else {
        const auto window = units::time_ps(met.window, "--window");
        usage_check(window > 0, "--window must be > 0", "--window");
        const auto offset = units::time_ps(met.offset, "--offset");
        const auto acc_offset = units::time_ps(met.accidental_offset, "--accidental-offset");
        const auto method = met.method();
        const auto file = load_timestamps(run, met.input);
        const auto [s1, s2] = pick_channels(file, met.ch1, met.ch2);
        const auto r = analyze_coincidences(*s1, *s2, window, offset, acc_offset, method);
        CountSummary counts{r.singles_1, r.singles_2, r.coincidences, r.accidentals, r.duration, r.window};
        result = to_json(pair_metrics(counts, d1, d2));
        result["accidental_method"] = method == AccidentalMethod::Shifted ? "shifted" : "analytic";
      }
      if (!metrics_out.empty()) {
        auto f = open_output(metrics_out, "--out");
        f << result.dump(2) << '\n';
        run.wrote(metrics_out);
      }
      out << run.envelope(std::move(result)).dump() << '\n';
      return 0;
    }

    if (fit_power->parsed()) {
      RunRecord run("fit-power");
      const auto points = load_points(run, power_input);
      out << run.envelope(to_json(fit_linear(points))).dump() << '\n';
      return 0;
    }

    if (fit_pol->parsed()) {
      RunRecord run("fit-polarization");
      const auto points = load_points(run, pol_input);
      out << run.envelope(to_json(fit_polarization(points))).dump() << '\n';
      return 0;
    }

    if (waist->parsed()) {
      RunRecord run("optimal-waist");
      const double wc = units::length_um(collection_waist, "--collection-waist");
      usage_check(wc > 0.0, "--collection-waist must be > 0", "--collection-waist");
      const double wp = optimal_pump_waist(wc);
      result = {{"collection_waist_um", wc},
                {"optimal_pump_waist_um", wp},
                {"overlap_at_optimum",
                 gaussian_overlap(GaussianMode{emission_waist(wp), 810.0}, GaussianMode{wc, 810.0})}};
      if (!pump_waist.empty()) {
        const double given = units::length_um(pump_waist, "--pump-waist");
        usage_check(given > 0.0, "--pump-waist must be > 0", "--pump-waist");
        result["pump_waist_um"] = given;
        result["overlap"] = gaussian_overlap(GaussianMode{emission_waist(given), 810.0}, GaussianMode{wc, 810.0});
      }
      usage_check(catalog.empty() == fiber_name.empty(), "--catalog and --fiber go together", "--fiber");
      if (!catalog.empty()) {
        std::istringstream in(run.load(catalog, "--catalog"));
        const auto fibers = load_fiber_catalog(in);
        const auto it = std::find_if(fibers.begin(), fibers.end(),
                                     [&](const FiberSpec& f) { return f.name == fiber_name; });
        usage_check(it != fibers.end(), "fiber '" + fiber_name + "' not in catalog", "--fiber");
        result["fiber"] = to_json(*it);
        result["fiber"]["acceptance_half_angle_deg"] = acceptance_half_angle(*it);
      }
      out << run.envelope(std::move(result)).dump() << '\n';
      return 0;
    }
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    out << error_json(std::string(to_string(e.code())), e.what(), e.parameter(), code).dump() << '\n';
    return code;
  } catch (const std::exception& e) {
    out << error_json("InternalError", e.what(), {}, 4).dump() << '\n';
    return 4;
  }
  return 2;
}

}  // namespace fibspdc::cli
