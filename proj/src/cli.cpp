#include "stlc/cli.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "stlc/errors.hpp"
#include "stlc/integrate.hpp"
#include "stlc/xi.hpp"

namespace stlc::cli {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParamsError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::pair<std::string, Rat>> parse_overrides(
    const std::vector<std::string>& assignments) {
  std::vector<std::pair<std::string, Rat>> overrides;
  for (const std::string& a : assignments) {
    auto eq = a.find('=');
    if (eq == std::string::npos)
      throw InvalidParamsError("parameter override must look like name=value");
    auto value = parse_rational(a.substr(eq + 1));
    if (!value)
      throw InvalidParamsError("bad rational in override '" + a + "'");
    overrides.emplace_back(a.substr(0, eq), *value);
  }
  return overrides;
}

namespace {

void write_output(const std::optional<std::string>& path, const Json& payload,
                  std::ostream& out) {
  const std::string text = payload.dump(2) + "\n";
  if (!path || *path == "-") {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw InvalidParamsError("cannot write '" + *path + "'");
  file << text;
}

struct GridCell {
  int k, m, k_prime, m_prime;
};

}  // namespace

int run_check(const CheckOptions& options, std::ostream& out,
              std::ostream& err) {
  try {
    const std::string text = read_file(options.file);
    SystemDocument doc = parse_system(text);
    fields::PolySystem system = doc.to_system(options.param_overrides);

    std::vector<GridCell> grid;
    for (int k = options.k_range.lo; k <= options.k_range.hi; ++k)
      for (int m = options.m_range.lo; m <= options.m_range.hi; ++m) {
        if (!options.asymmetric) {
          grid.push_back({k, m, 0, 0});
          continue;
        }
        for (int kp = options.k_prime_range.lo;
             kp <= std::min(options.k_prime_range.hi, k); ++kp)
          for (int mp = options.m_prime_range.lo;
               mp <= options.m_prime_range.hi; ++mp)
            grid.push_back({k, m, kp, mp});
      }
    if (grid.empty()) throw InvalidParamsError("empty parameter grid");

    const int needed = 2 * options.k_range.hi + 1;
    if (options.length_cap < needed)
      throw InvalidParamsError(
          "length cap " + std::to_string(options.length_cap) +
          " cannot reach the bad brackets of k = " +
          std::to_string(options.k_range.hi) + " (need " +
          std::to_string(needed) + ")");
    freelie::HallBasis basis(options.length_cap);

    // Fan the grid out over workers; results land at fixed indices so the
    // merge is deterministic.
    std::vector<std::optional<obstruction::ObstructionVerdict>> verdicts(
        grid.size());
    std::vector<double> cell_ms(grid.size(), 0);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
      fields::LieEvaluator evaluator(system, basis);
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= grid.size() || failed.load()) return;
        const GridCell& cell = grid[i];
        auto start = std::chrono::steady_clock::now();
        try {
          verdicts[i] =
              options.asymmetric
                  ? obstruction::stlc_verdict_asymmetric(
                        evaluator, cell.k, cell.k_prime, cell.m, cell.m_prime,
                        options.length_cap)
                  : obstruction::stlc_verdict_symmetric(evaluator, cell.k,
                                                        cell.m,
                                                        options.length_cap);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          failed = true;
          failure = e.what();
          return;
        }
        cell_ms[i] = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      }
    };
    unsigned jobs = options.jobs > 0 ? options.jobs
                                     : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, grid.size());
    std::vector<std::thread> pool;
    for (unsigned j = 0; j + 1 < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();
    if (failed) throw std::runtime_error(failure);

    Json report;
    report["schema"] = kReportSchema;
    report["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    Json params = Json::object();
    for (const auto& [name, value] : doc.params) {
      Rat v = value;
      for (const auto& [oname, ovalue] : options.param_overrides)
        if (oname == name) v = ovalue;
      params[name] = rational_to_json(v);
    }
    report["input"] = Json{{"system", doc.name},
                           {"dim", doc.dim},
                           {"digest", input_digest(text)},
                           {"params", params}};
    report["length_cap"] = options.length_cap;
    int obstructions = 0;
    Json checks = Json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      Json entry = verdict_to_json(*verdicts[i]);
      if (options.timings) entry["timing_ms"] = cell_ms[i];
      if (verdicts[i]->outcome == obstruction::VerdictOutcome::Obstruction)
        ++obstructions;
      checks.push_back(std::move(entry));
    }
    report["checks"] = checks;
    report["summary"] =
        Json{{"obstructions", obstructions},
             {"inconclusive", static_cast<int>(grid.size()) - obstructions}};

    write_output(options.json_path, report, out);
    if (options.json_path && *options.json_path != "-")
      out << doc.name << ": " << obstructions << " obstruction(s), "
          << grid.size() - obstructions << " inconclusive\n";
    return obstructions > 0 ? kExitObstruction : kExitInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_brackets(const BracketsOptions& options, std::ostream& out,
                 std::ostream& err) {
  try {
    const std::string text = read_file(options.file);
    SystemDocument doc = parse_system(text);
    fields::PolySystem system = doc.to_system(options.param_overrides);
    freelie::HallBasis basis(options.max_length);
    fields::LieEvaluator evaluator(system, basis);

    Json rows = Json::array();
    for (freelie::Bracket b : basis.members()) {
      Json row;
      row["bracket"] = freelie::to_string(b);
      auto c = freelie::counts(b);
      row["length"] = c.length;
      row["n0"] = c.n0;
      row["n1"] = c.n1;
      row["n2"] = c.n2;
      if (options.eval_at_zero)
        row["value_at_zero"] = vector_to_json(evaluator.at_zero(b));
      rows.push_back(std::move(row));
    }
    if (options.json_path) {
      Json report;
      report["schema"] = kReportSchema;
      report["input"] = Json{{"system", doc.name},
                             {"digest", input_digest(text)}};
      report["brackets"] = rows;
      write_output(options.json_path, report, out);
    } else {
      for (const Json& row : rows) {
        out << row["bracket"].get<std::string>() << "  len="
            << row["length"].get<int>() << " n0=" << row["n0"].get<int>()
            << " n1=" << row["n1"].get<int>() << " n2=" << row["n2"].get<int>();
        if (options.eval_at_zero) out << "  f(0)=" << row["value_at_zero"].dump();
        out << "\n";
      }
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_simulate(const SimulateOptions& options, std::ostream& out,
                 std::ostream& err) {
  try {
    SystemDocument doc = parse_system(read_file(options.file));
    fields::PolySystem system = doc.to_system(options.param_overrides);
    ControlDocument controls_doc =
        parse_controls(read_file(options.controls_file));
    signals::ControlPair controls =
        controls_doc.to_controls(options.param_overrides);

    Rat t_end = is_zero(options.t_end) ? controls.horizon() : options.t_end;
    if (t_end > controls.horizon())
      throw InvalidParamsError("t exceeds the control horizon");

    sim::Trajectory traj =
        sim::integrate(system, controls, to_double(t_end), options.rel_tol,
                       options.csv_path.has_value());

    if (options.csv_path) {
      std::ofstream csv(*options.csv_path);
      if (!csv) throw InvalidParamsError("cannot write CSV file");
      csv << "t";
      for (int i = 1; i <= system.dim(); ++i) csv << ",x" << i;
      csv << "\n";
      csv.setf(std::ios::scientific);
      csv.precision(15);
      for (std::size_t row = 0; row < traj.times.size(); ++row) {
        csv << traj.times[row];
        for (double v : traj.states[row]) csv << "," << v;
        csv << "\n";
      }
    }

    out.setf(std::ios::scientific);
    out.precision(12);
    out << "final state at t = " << to_double(t_end) << ":\n";
    for (int i = 0; i < system.dim(); ++i)
      out << "  x" << (i + 1) << " = " << traj.final_state()[i] << "\n";
    out << "steps " << traj.stats.steps << ", rejected "
        << traj.stats.rejected << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_xi(const XiOptions& options, std::ostream& out, std::ostream& err) {
  try {
    ControlDocument controls_doc =
        parse_controls(read_file(options.controls_file));
    signals::ControlPair controls = controls_doc.to_controls();
    Rat t = is_zero(options.t) ? controls.horizon() : options.t;

    freelie::HallBasis basis(freelie::HallBasis::default_cap());
    freelie::Bracket b = parse_bracket_spec(basis.pool(), options.bracket_spec);
    if (!basis.is_member(b))
      throw InvalidParamsError(
          "bracket " + freelie::to_string(b) +
          " is not a member of the generated basis (cap " +
          std::to_string(basis.max_length()) + ")");
    signals::XiSession session(basis, controls);
    Rat value = session.xi(b, t);
    out << freelie::to_string(b) << " at t = " << to_string(t) << ": "
        << to_string(value) << " (" << to_double(value) << ")\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace stlc::cli
