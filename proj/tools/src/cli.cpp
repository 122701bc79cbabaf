#include "rsconn/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <ostream>
#include <sstream>
#include <thread>

#include "rsconn/generators.hpp"

namespace rsconn::cli {

using io::Json;

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::Exponents, "exponents"}, {Command::Normalize, "normalize"},   {Command::Euler, "euler"},
    {Command::Hom, "hom"},             {Command::Algebraize, "algebraize"}, {Command::Roundtrip, "roundtrip"},
    {Command::Saturate, "saturate"},   {Command::Selftest, "selftest"},
};

struct Result {
  Json body = Json::object();
  std::ostringstream text;
};

std::string matrix_text(const SeriesMatrix& a) {
  std::string out = "[";
  for (int i = 0; i < a.rows(); ++i) {
    out += i ? "; " : "";
    for (int j = 0; j < a.cols(); ++j) out += (j ? ", " : "") + a(i, j).str();
  }
  return out + "]";
}

std::string matrix_text(const RMatrix& a) { return matrix_text(constant_series(a)); }

std::string exponents_text(const Exponents& e) {
  std::string out = "{";
  bool first = true;
  for (const auto& r : e)
    for (int k = 0; k < r.multiplicity; ++k) {
      out += (first ? "" : ", ") + r.root.str();
      first = false;
    }
  return out + "}";
}

Json steps_json(const std::vector<ShearStep>& steps) {
  Json out = Json::array();
  for (const auto& s : steps) {
    Json item = Json::object();
    item["rho"] = s.rho.str();
    item["direction"] = s.direction;
    out.push_back(std::move(item));
  }
  return out;
}

// Commands needing a logarithmic model read algebraic input through the window.
Connection logarithmic_input(const Connection& c, int n) {
  Connection out = c.flavor() == Flavor::Algebraic ? restrict(c, n) : c;
  if (out.flavor() != Flavor::Logarithmic)
    fail(ErrorKind::ValidationError, "command needs a logarithmic connection, input is " +
                                         std::string(flavor_name(c.flavor())) + " with a pole");
  return out;
}

void cmd_exponents(const Connection& in, const JobSpec& job, Result& r) {
  const Exponents e = exponents(logarithmic_input(in, job.precision));
  r.body["exponents"] = io::to_json(e);
  r.body["exponents_mod_Z"] = io::to_json(exponents_mod_z(e));
  r.text << "  exponents: " << exponents_text(e) << "\n";
}

void cmd_normalize(const Connection& in, const JobSpec& job, Result& r) {
  const ShearResult s = shear_normalize(logarithmic_input(in, job.precision));
  r.body["input"] = io::to_json(in);
  r.body["steps"] = steps_json(s.steps);
  r.body["connection"] = io::to_json(s.conn);
  r.body["gauge"] = io::to_json(s.gauge);
  r.body["exponents"] = io::to_json(exponents(s.conn));
  r.text << "  steps: " << s.steps.size() << "\n  exponents: " << exponents_text(exponents(s.conn))
         << "\n  A: " << matrix_text(s.conn.matrix()) << "\n";
}

void cmd_euler(const Connection& in, const JobSpec& job, Result& r) {
  const Connection c = logarithmic_input(in, job.precision);
  const EulerFormResult e = euler_form(c, job.precision);
  r.body["input"] = io::to_json(in);
  r.body["euler_form"] = io::to_json(e);
  r.body["residual_vanishes"] = vanishes_through(euler_residual(c, e), e.certified_to);
  r.text << "  A0: " << matrix_text(e.euler.a) << "\n  P: " << matrix_text(e.gauge.s)
         << "\n  certified_to: " << e.certified_to << "\n";
}

void cmd_algebraize(const Connection& in, const JobSpec& job, Result& r) {
  const Connection c = logarithmic_input(in, job.precision);
  const AlgebraizeResult a = algebraize(c, job.precision);
  r.body["input"] = io::to_json(c);
  r.body["algebraic"] = io::to_json(a.algebraic);
  r.body["gauge"] = io::to_json(a.gauge);
  r.body["certified_to"] = a.certified_to;
  r.body["steps"] = steps_json(a.steps);
  if (job.command == Command::Roundtrip) {
    const bool ok = verify_certificate(c, x_layer(a.algebraic.matrix(), 0), a.gauge, a.certified_to);
    if (!ok) fail(ErrorKind::CertificateRejected, "freshly computed certificate failed re-verification");
    r.body["verified"] = true;
  }
  r.text << "  algebraic A0: " << matrix_text(a.algebraic.matrix()) << "\n  certified_to: " << a.certified_to
         << "\n  shear steps: " << a.steps.size() << "\n";
}

void cmd_saturate(const Connection& in, const JobSpec& job, Result& r) {
  const SaturationResult s = saturate_log_model(in, job.bound, job.precision);
  r.body["input"] = io::to_json(in);
  r.body["rounds"] = s.rounds;
  r.body["model"] = io::to_json(s.conn);
  r.body["gauge"] = io::to_json(s.gauge);
  r.body["exponents_mod_Z"] = io::to_json(exponents_mod_z(exponents(s.conn)));
  r.text << "  rounds: " << s.rounds << "\n  exponents mod Z: " << exponents_text(exponents_mod_z(exponents(s.conn)))
         << "\n";
}

void cmd_hom(const Json& doc, const JobSpec& job, Result& r) {
  const EndObject src = io::end_object_from_json(doc.contains("src") ? doc["src"] : Json(), "$.src");
  const EndObject dst = io::end_object_from_json(doc.contains("dst") ? doc["dst"] : Json(), "$.dst");
  if (src.t_order() != dst.t_order()) fail(ErrorKind::ValidationError, "$: src and dst t_order differ");
  const HomBasis h = hom_space(src, dst, -job.precision, job.precision);
  r.body["src"] = io::to_json(src);
  r.body["dst"] = io::to_json(dst);
  r.body["hom"] = io::to_json(h);
  r.body["not_induced_by_End_R"] = h.has_nonconstant();
  r.text << "  dimension: " << h.basis.size() << "\n";
  for (const auto& b : h.basis) r.text << "  h: " << matrix_text(b) << "\n";
  if (h.has_nonconstant()) r.text << "  not induced by End_R\n";
}

// Re-checks certificates stored in an algebraize/roundtrip report document.
void cmd_verify(const Json& doc, Result& r) {
  std::vector<const Json*> reports;
  if (doc.is_object() && doc.contains("reports") && doc["reports"].is_array()) {
    for (const auto& rep : doc["reports"]) reports.push_back(&rep);
  } else {
    reports.push_back(&doc);
  }
  Json checked = Json::array();
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const Json& rep = *reports[i];
    const std::string path = "$.reports[" + std::to_string(i) + "]";
    if (!rep.is_object() || !rep.contains("algebraic")) continue;
    const Connection input = io::connection_from_json(rep["input"], path + ".input");
    const Connection alg = io::connection_from_json(rep["algebraic"], path + ".algebraic");
    const Gauge g = io::gauge_from_json(rep["gauge"], input.t_order(), path + ".gauge");
    if (!rep.contains("certified_to") || !rep["certified_to"].is_number_integer())
      fail(ErrorKind::ParseError, path + ": missing integer field 'certified_to'");
    const int n = rep["certified_to"].get<int>();
    bool ok = alg.flavor() == Flavor::Algebraic && g.rank() == input.rank();
    bool constant = true;
    for (const auto& s : alg.matrix().data())
      for (const auto& [k, c] : s.terms()) constant = constant && k == 0;
    ok = ok && constant && verify_certificate(input, x_layer(alg.matrix(), 0), g, n);
    Json item = Json::object();
    item["index"] = i;
    item["certified_to"] = n;
    item["valid"] = ok;
    checked.push_back(std::move(item));
    if (!ok) ++rejected;
    r.text << "  certificate " << i << ": " << (ok ? "valid" : "REJECTED") << " through x^" << n << "\n";
  }
  if (checked.empty()) fail(ErrorKind::ValidationError, "no certificates found in report");
  r.body["certificates"] = std::move(checked);
  if (rejected) fail(ErrorKind::CertificateRejected, std::to_string(rejected) + " certificate(s) rejected");
}

void cmd_selftest(const JobSpec& job, Result& r) {
  int passed = 0;
  Json failures = Json::array();
  for (int i = 0; i < job.count; ++i) {
    const std::uint64_t seed = job.seed + static_cast<std::uint64_t>(i);
    const int n = 1 + i % 4, m = 1 + (i / 4) % 3;
    const TwistedInstance inst = gen_twisted(seed, n, m, job.precision);
    const AlgebraizeResult a = algebraize(inst.conn, job.precision);
    const bool ok = a.certified_to >= job.precision &&
                    verify_certificate(inst.conn, x_layer(a.algebraic.matrix(), 0), a.gauge, job.precision) &&
                    exponents_mod_z(exponents(restrict(a.algebraic, job.precision))) ==
                        exponents_mod_z(residue_spectrum(inst.hidden.a));
    if (ok) ++passed;
    else failures.push_back(seed);
  }
  r.body["seed"] = job.seed;
  r.body["instances"] = job.count;
  r.body["passed"] = passed;
  r.body["failed_seeds"] = std::move(failures);
  r.text << "  passed " << passed << "/" << job.count << "\n";
  if (passed != job.count) fail(ErrorKind::CertificateRejected, "selftest found failing instances");
}

FileReport finish(const JobSpec& job, const std::string& label, Result& r, std::optional<Error> err) {
  Json rep = Json::object();
  rep["file"] = label;
  rep["command"] = std::string(command_name(job.command));
  rep["precision"] = job.precision;
  int code = 0;
  if (err) {
    code = exit_code_for(err->kind());
    rep["status"] = "error";
    Json e = Json::object();
    e["name"] = std::string(err->name());
    e["message"] = err->what();
    rep["error"] = std::move(e);
  } else {
    rep["status"] = "ok";
  }
  for (auto it = r.body.begin(); it != r.body.end(); ++it) rep[it.key()] = it.value();
  return FileReport{std::move(rep), code};
}

std::string text_report(const FileReport& f, const std::string& detail) {
  std::ostringstream os;
  os << f.report["file"].get<std::string>() << " [" << f.report["command"].get<std::string>() << "] "
     << f.report["status"].get<std::string>();
  if (f.report.contains("error"))
    os << ": " << f.report["error"]["name"].get<std::string>() << ": " << f.report["error"]["message"].get<std::string>();
  os << "\n" << detail;
  return os.str();
}

struct Rendered {
  FileReport file;
  std::string text;
};

Rendered run_rendered(const JobSpec& job, std::string_view text, const std::string& label) {
  Result r;
  std::optional<Error> err;
  try {
    if (job.command == Command::Selftest) {
      cmd_selftest(job, r);
    } else {
      const Json doc = io::parse_text(text);
      if (job.command == Command::Hom) {
        cmd_hom(doc, job, r);
      } else if (job.command == Command::Roundtrip && job.verify) {
        cmd_verify(doc, r);
      } else {
        const Connection in = io::connection_from_json(doc);
        switch (job.command) {
          case Command::Exponents: cmd_exponents(in, job, r); break;
          case Command::Normalize: cmd_normalize(in, job, r); break;
          case Command::Euler: cmd_euler(in, job, r); break;
          case Command::Algebraize:
          case Command::Roundtrip: cmd_algebraize(in, job, r); break;
          case Command::Saturate: cmd_saturate(in, job, r); break;
          default: break;
        }
      }
    }
  } catch (const Error& e) {
    err = e;
    r.body = Json::object();
  } catch (const Json::exception& e) {
    err = Error(ErrorKind::ParseError, e.what());
    r.body = Json::object();
  } catch (const std::exception& e) {
    err = Error(ErrorKind::Structural, std::string("internal failure: ") + e.what());
    r.body = Json::object();
  }
  FileReport f = finish(job, label, r, err);
  const std::string detail = err ? std::string() : r.text.str();
  return Rendered{f, text_report(f, detail)};
}

Rendered run_path(const JobSpec& job, const std::filesystem::path& path) {
  const std::string label = path.filename().string();
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const Error& e) {
    Result r;
    FileReport f = finish(job, label, r, Error(e.kind(), "cannot read input file " + label));
    return Rendered{f, text_report(f, "")};
  }
  return run_rendered(job, text, label);
}

}  // namespace

Command parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommands)
    if (n == name) return c;
  fail(ErrorKind::ValidationError, "unknown command '" + std::string(name) + "'");
}

std::string_view command_name(Command c) {
  for (const auto& [k, n] : kCommands)
    if (k == c) return n;
  return "unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::IoError: return 1;
    default: return 2;
  }
}

FileReport run_text(const JobSpec& job, std::string_view text, const std::string& label) {
  return run_rendered(job, text, label).file;
}

FileReport run_file(const JobSpec& job, const std::filesystem::path& path) { return run_path(job, path).file; }

Outcome run(const JobSpec& job) {
  std::vector<std::filesystem::path> inputs = job.inputs;
  if (job.command == Command::Selftest && inputs.empty()) inputs.emplace_back("<generated>");
  std::vector<Rendered> results(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < inputs.size();)
      results[i] = job.command == Command::Selftest ? run_rendered(job, "", inputs[i].string())
                                                    : run_path(job, inputs[i]);
  };
  unsigned threads = job.jobs ? job.jobs : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(inputs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Outcome out;
  Json reports = Json::array();
  std::string text;
  for (const auto& r : results) {
    if (out.exit_code == 0) out.exit_code = r.file.exit_code;
    reports.push_back(r.file.report);
    text += r.text;
  }
  if (job.format == Format::Json) {
    Json doc = Json::object();
    doc["reports"] = std::move(reports);
    out.output = io::dump(doc);
  } else {
    out.output = text;
  }
  return out;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"rsconn: Euler forms and gauge certificates for regular-singular connections over Q[t]/(t^m)"};
  app.set_version_flag("--version", "rsconn 0.1.0");
  std::string command;
  std::vector<std::string> files;
  JobSpec job;
  std::string format = "json";
  std::vector<std::string> names;
  for (const auto& [c, n] : kCommands) names.emplace_back(n);
  app.add_option("command", command, "exponents | normalize | euler | hom | algebraize | roundtrip | saturate | selftest")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("files", files, "Input JSON files (connections; hom takes {\"src\", \"dst\"} EndObjects)");
  app.add_option("-N,--precision", job.precision, "x-precision N")->capture_default_str()->check(CLI::Range(4, 10000));
  app.add_option("--seed", job.seed, "Seed for generated instances (selftest)")->capture_default_str();
  app.add_option("--format", format, "Output format")->capture_default_str()->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--verify", job.verify, "roundtrip: re-check certificates stored in report files");
  app.add_option("--bound", job.bound, "saturate: maximal lattice rounds")->capture_default_str()->check(CLI::Range(1, 1000));
  app.add_option("--count", job.count, "selftest: number of generated instances")->capture_default_str()->check(CLI::Range(1, 100000));
  app.add_option("-j,--jobs", job.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }
  job.command = parse_command(command);
  job.format = format == "text" ? Format::Text : Format::Json;
  for (const auto& f : files) job.inputs.emplace_back(f);
  if (job.inputs.empty() && job.command != Command::Selftest) {
    err << "error: command '" << command << "' needs at least one input file\n";
    return 1;
  }
  const Outcome o = run(job);
  out << o.output;
  return o.exit_code;
}

}  // namespace rsconn::cli
