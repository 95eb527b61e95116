#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <regex>
#include <sstream>

#include "projdyn/dynamics.hpp"
#include "projdyn/error.hpp"
#include "projdyn/parallel.hpp"
#include "projdyn/sympow.hpp"

namespace projdyn::cli {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"iterate", "print the s-th iterate of --map"},
    {"orbit", "forward orbit of --point under --map"},
    {"jacobian", "critical locus of --map"},
    {"resultant", "Macaulay resultant of the forms of --map"},
    {"pushforward", "image of V(--form) under the s-th iterate of --map"},
    {"improper-cert", "improperness certificate for --form at --indices"},
    {"improper-search", "least index tuple up to --bound with a vanishing certificate"},
    {"ys-test", "whether --map has a critical point of period dividing --s"},
    {"sympow", "the n-th symmetric power of a map of P^1"},
    {"period-poly", "numerator of f^s(0) for f(z) = z^-d + c"},
    {"find-pcf", "a parameter c making 0 periodic of exact period --s under z^-d + c"},
    {"dims", "dimension and certificate degree formulas"},
};

struct Options {
  std::string field = "QQ";
  std::string map;
  std::string form;
  std::string point;
  std::string indices;
  std::string strategy = "auto";
  unsigned bound = 0;
  unsigned s = 1;
  unsigned d = 0;
  unsigned n = 0;
  unsigned m = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t max_steps = kDefaultOrbitSteps;
  bool json = false;
};

struct Flags {
  CLI::Option* map = nullptr;
  CLI::Option* form = nullptr;
  CLI::Option* point = nullptr;
  CLI::Option* indices = nullptr;
  CLI::Option* bound = nullptr;
  CLI::Option* s = nullptr;
  CLI::Option* d = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* m = nullptr;
  CLI::Option* threads = nullptr;
};

struct Outcome {
  int code = kSuccess;
  json result = json::object();
  std::string text;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(const CLI::Option* opt, const std::string& command) {
  if (opt->count() == 0) throw UsageError(command + " requires " + opt->get_name());
}

std::string read_argument(const std::string& value) {
  if (value.empty() || value.front() != '@') return value;
  std::ifstream in(value.substr(1));
  if (!in) throw UsageError("cannot read " + value.substr(1));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Highest variable index mentioned in the text, counting the aliases x, y, z.
std::optional<std::size_t> max_variable(const std::string& text) {
  static const std::regex var(R"((?:^|[^A-Za-z0-9_])([xyz])(\d*))");
  std::optional<std::size_t> best;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it) {
    const std::string letter = (*it)[1];
    const std::string digits = (*it)[2];
    std::size_t idx = digits.empty() ? std::size_t(letter[0] - 'x') : std::stoul(digits);
    if (letter != "x" && !digits.empty()) continue;
    best = std::max(best.value_or(0), idx);
  }
  return best;
}

std::string join(const std::vector<std::string>& parts) {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
  return s + "]";
}

std::vector<std::string> strings_of(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

json bigint_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json optional_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

class Command {
 public:
  Command(const Options& o, const Flags& flags, std::string name)
      : o_(o), flags_(flags), name_(std::move(name)), field_(Field::parse(o.field)) {
    if (o_.strategy == "ratio") {
      strategy_.mode = ResultantMode::kCoordinateChange;
    } else if (o_.strategy == "modular") {
      strategy_.mode = ResultantMode::kModularInterpolation;
    } else if (o_.strategy != "auto") {
      throw UsageError("--strategy must be auto, ratio or modular");
    }
    strategy_.seed = o_.seed;
  }

  const Field& field() const { return field_; }

  Outcome execute() {
    if (name_ == "iterate") return iterate_cmd();
    if (name_ == "orbit") return orbit_cmd();
    if (name_ == "jacobian") return jacobian_cmd();
    if (name_ == "resultant") return resultant_cmd();
    if (name_ == "pushforward") return pushforward_cmd();
    if (name_ == "improper-cert") return improper_cert_cmd();
    if (name_ == "improper-search") return improper_search_cmd();
    if (name_ == "ys-test") return ys_test_cmd();
    if (name_ == "sympow") return sympow_cmd();
    if (name_ == "period-poly") return period_poly_cmd();
    if (name_ == "find-pcf") return find_pcf_cmd();
    return dims_cmd();
  }

 private:
  // Parses --map and, when wanted, --form into one ring large enough for both.
  void load(bool with_form) {
    require(flags_.map, name_);
    if (with_form) require(flags_.form, name_);
    const std::string map_text = read_argument(o_.map);
    const std::string form_text = with_form ? read_argument(o_.form) : std::string();
    const std::size_t k = parse_polynomial_list(map_text, kMaxVariables, field_).size();
    std::size_t nv = k;
    for (const auto& t : {map_text, form_text}) {
      if (auto v = max_variable(t)) nv = std::max(nv, *v + 1);
    }
    map_ = Endomorphism(parse_polynomial_list(map_text, nv, field_));
    if (with_form) form_ = HypersurfaceForm(parse_polynomial(form_text, nv, field_), k);
  }

  ProjectivePoint parse_point(const std::string& raw) const {
    std::string text = raw;
    text.erase(std::remove_if(text.begin(), text.end(),
                              [](char c) { return c == '(' || c == ')' || c == '[' || c == ']' || c == ' '; }),
               text.end());
    std::replace(text.begin(), text.end(), ',', ':');
    std::vector<Scalar> coords;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ':');) {
      const Polynomial c = parse_polynomial(tok, 1, field_);
      if (!c.is_zero() && !c.is_constant()) throw InvalidInput("point coordinate '" + tok + "' is not a constant");
      coords.push_back(c.is_zero() ? Scalar::zero(field_) : c.constant_value());
    }
    if (coords.size() < 2) throw InvalidInput("a point needs at least two coordinates");
    return ProjectivePoint(std::move(coords));
  }

  IndexTuple parse_indices() const {
    require(flags_.indices, name_);
    std::string text = o_.indices;
    std::replace_if(text.begin(), text.end(), [](char c) { return c == '(' || c == ')' || c == ','; }, ' ');
    std::stringstream ss(text);
    std::vector<unsigned> idx;
    for (long v; ss >> v;) {
      if (v < 0) throw InvalidInput("indices must be nonnegative");
      idx.push_back(unsigned(v));
    }
    if (!ss.eof()) throw InvalidInput("malformed --indices '" + o_.indices + "'");
    return IndexTuple(std::move(idx));
  }

  PushforwardOptions pushforward_options() const {
    PushforwardOptions opts;
    opts.strategy = strategy_;
    opts.seed = o_.seed;
    return opts;
  }

  Outcome iterate_cmd() {
    load(false);
    Outcome r;
    const auto forms = strings_of(iterate(map_, o_.s).forms());
    r.result["s"] = o_.s;
    r.result["map"] = forms;
    r.text = join(forms) + "\n";
    return r;
  }

  Outcome orbit_cmd() {
    load(false);
    require(flags_.point, name_);
    const OrbitRecord rec = orbit(map_, parse_point(o_.point), o_.max_steps);
    Outcome r;
    std::vector<std::string> pts;
    for (const auto& p : rec.points) pts.push_back(to_string(p));
    r.result["points"] = pts;
    r.result["tail"] = optional_json(rec.tail);
    r.result["period"] = optional_json(rec.period);
    for (const auto& p : pts) r.text += p + "\n";
    if (rec.period) {
      r.text += "tail " + std::to_string(*rec.tail) + " period " + std::to_string(*rec.period) + "\n";
    } else {
      r.text += "no repeat within " + std::to_string(o_.max_steps) + " steps\n";
      r.code = kNegative;
    }
    return r;
  }

  Outcome jacobian_cmd() {
    load(false);
    const HypersurfaceForm j = jacobian(map_);
    Outcome r;
    r.result["determinant"] = to_string(jacobian_determinant(map_));
    r.result["critical_form"] = to_string(j.form());
    r.result["degree"] = j.degree();
    r.text = to_string(j.form()) + "\n";
    return r;
  }

  static void describe(json& out, const ResultantResult& res) {
    out["mode"] = to_string(res.mode_used);
    out["coordinate_changes"] = res.coordinate_changes;
    out["primes_used"] = res.primes_used;
    out["grid_points"] = res.grid_points;
  }

  Outcome resultant_cmd() {
    load(false);
    const ResultantResult res = endo_resultant(map_, strategy_);
    Outcome r;
    r.result["value"] = to_string(res.value);
    describe(r.result, res);
    r.text = to_string(res.value) + "\n";
    return r;
  }

  Outcome pushforward_cmd() {
    load(true);
    if (o_.s < 1) throw UsageError("pushforward needs --s >= 1");
    Outcome r;
    r.result["s"] = o_.s;
    if (o_.s == 1) {
      const PushforwardResult res = pushforward_full(map_, form_, pushforward_options());
      r.result["form"] = to_string(res.form.form());
      r.result["degree"] = res.form.degree();
      r.result["raw"] = to_string(res.raw);
      r.result["multiplicity_dropped"] = res.multiplicity_dropped;
      r.result["samples_checked"] = res.samples_checked;
      r.text = to_string(res.form.form()) + "\n";
    } else {
      PushforwardChain chain(map_, form_, pushforward_options());
      const HypersurfaceForm& img = chain.at(o_.s);
      r.result["form"] = to_string(img.form());
      r.result["degree"] = img.degree();
      r.result["raw"] = nullptr;
      r.result["multiplicity_dropped"] = nullptr;
      r.result["samples_checked"] = nullptr;
      r.text = to_string(img.form()) + "\n";
    }
    return r;
  }

  Outcome improper_cert_cmd() {
    load(true);
    const IndexTuple idx = parse_indices();
    PushforwardChain chain(map_, form_, pushforward_options());
    const ResultantResult res = improper_certificate(chain, idx, strategy_);
    Outcome r;
    r.result["indices"] = idx.indices();
    r.result["value"] = to_string(res.value);
    r.result["vanishes"] = res.value.is_zero();
    describe(r.result, res);
    r.text = to_string(res.value) + "\n";
    return r;
  }

  Outcome improper_search_cmd() {
    load(true);
    require(flags_.bound, name_);
    const WitnessSearch ws = search_improper_witness(map_, form_, o_.bound);
    Outcome r;
    r.result["witness"] = ws.witness ? json(ws.witness->indices()) : json(nullptr);
    r.result["bound"] = ws.bound;
    r.result["tuples_checked"] = ws.tuples_checked;
    if (ws.witness) {
      r.text = to_string(*ws.witness) + "\n";
    } else {
      r.text = "none with indices up to " + std::to_string(o_.bound) + "\n";
      r.code = kNegative;
    }
    return r;
  }

  Outcome ys_test_cmd() {
    load(false);
    const ScopedVerdict v = has_periodic_critical_point(map_, o_.s);
    Outcome r;
    r.result["s"] = o_.s;
    r.result["value"] = v.value;
    r.result["scope"] = v.scope;
    r.result["witness"] = v.witness ? json(to_string(*v.witness)) : json(nullptr);
    r.text = std::string(v.value ? "true" : "false") + "\nscope " + v.scope + "\n";
    if (v.witness) r.text += "witness " + to_string(*v.witness) + "\n";
    if (!v.value) r.code = kNegative;
    return r;
  }

  Outcome sympow_cmd() {
    load(false);
    require(flags_.n, name_);
    const auto forms = strings_of(symmetric_power(map_, o_.n).forms());
    Outcome r;
    r.result["n"] = o_.n;
    r.result["map"] = forms;
    r.text = join(forms) + "\n";
    return r;
  }

  Outcome period_poly_cmd() {
    require(flags_.d, name_);
    require(flags_.s, name_);
    const PeriodPolynomial g = period_polynomial(o_.d, o_.s);
    Outcome r;
    r.result["d"] = o_.d;
    r.result["s"] = o_.s;
    r.result["degree"] = g.degree();
    json coeffs = json::array();
    std::vector<std::string> parts;
    for (const auto& c : g.coefficients) {
      coeffs.push_back(bigint_json(c));
      parts.push_back(c.get_str());
    }
    r.result["coefficients"] = coeffs;
    r.text = join(parts) + "\n";
    return r;
  }

  Outcome find_pcf_cmd() {
    require(flags_.d, name_);
    require(flags_.s, name_);
    const auto c = find_pcf_parameter(o_.d, o_.s, field_);
    Outcome r;
    r.result["d"] = o_.d;
    r.result["period"] = o_.s;
    if (!c) {
      r.result["parameter"] = nullptr;
      r.result["orbit"] = nullptr;
      r.text = "none in " + field_.to_string() + "\n";
      r.code = kNegative;
      return r;
    }
    const ProjectivePoint zero(std::vector<Scalar>{Scalar::zero(field_), Scalar::one(field_)});
    std::vector<std::string> pts;
    for (const auto& p : orbit(inverse_power_map(o_.d, *c), zero, o_.s + 1).points) pts.push_back(to_string(p));
    r.result["parameter"] = c->to_string();
    r.result["orbit"] = pts;
    r.text = c->to_string() + "\n";
    return r;
  }

  Outcome dims_cmd() {
    require(flags_.n, name_);
    if (!flags_.d->count() && !flags_.m->count()) throw UsageError("dims needs --d or --m");
    Outcome r;
    r.result["n"] = o_.n;
    if (flags_.m->count()) {
      const BigInt v = dim_forms(o_.n, o_.m);
      r.result["dim_forms"] = bigint_json(v);
      r.text += "dim_forms " + v.get_str() + "\n";
    }
    if (flags_.d->count()) {
      const BigInt v = dim_end(o_.n, o_.d);
      r.result["dim_end"] = bigint_json(v);
      r.text += "dim_end " + v.get_str() + "\n";
    }
    if (flags_.indices->count()) {
      if (!flags_.d->count() || !flags_.m->count()) throw UsageError("the certificate degree needs --d and --m");
      const BigInt v = generic_cert_degree(o_.n, o_.m, o_.d, parse_indices());
      r.result["generic_cert_degree"] = bigint_json(v);
      r.text += "generic_cert_degree " + v.get_str() + "\n";
    }
    return r;
  }

  const Options& o_;
  const Flags& flags_;
  std::string name_;
  Field field_;
  ResultantStrategy strategy_;
  Endomorphism map_;
  HypersurfaceForm form_;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
    case ErrorCode::kRingMismatch:
    case ErrorCode::kBasePoint:
    case ErrorCode::kNotMorphism:
      return kUsage;
    case ErrorCode::kDegeneracy:
    case ErrorCode::kInterpolation:
    case ErrorCode::kUnsupported:
      return kDegenerate;
  }
  return kDegenerate;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamics of endomorphisms of projective space"};
  app.name("projdyn");
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  Flags flags;
  app.add_option("--field", o.field, "QQ or Fp:<prime>")->capture_default_str();
  flags.map = app.add_option("--map", o.map, "forms [f0, ..., fn], or @file");
  flags.form = app.add_option("--form", o.form, "hypersurface form, or @file");
  flags.point = app.add_option("--point", o.point, "point such as (1:0:2)");
  flags.indices = app.add_option("--indices", o.indices, "index tuple i0,i1,...");
  flags.bound = app.add_option("--bound", o.bound, "largest index searched");
  flags.s = app.add_option("--s", o.s, "iterate, period or step count")->capture_default_str();
  flags.d = app.add_option("--d", o.d, "degree");
  flags.n = app.add_option("--n", o.n, "dimension or symmetric power");
  flags.m = app.add_option("--m", o.m, "hypersurface degree");
  app.add_option("--seed", o.seed, "seed for all randomized steps")->capture_default_str();
  flags.threads = app.add_option("--threads", o.threads, "worker threads, 0 = auto");
  app.add_option("--strategy", o.strategy, "resultant strategy")
      ->check(CLI::IsMember({"auto", "ratio", "modular"}))
      ->capture_default_str();
  app.add_option("--max-steps", o.max_steps, "orbit step limit")->capture_default_str();
  app.add_flag("--json", o.json, "machine-readable output");
  for (const auto& [name, help] : kCommands) app.add_subcommand(name, help);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  if (flags.threads->count()) set_thread_count(o.threads);

  json doc;
  doc["command"] = name;
  doc["field"] = o.field;
  doc["seed"] = o.seed;
  auto fail = [&](int code, const std::string& kind, const std::string& message, const std::string& detail) {
    err << "projdyn " << name << ": " << message << "\n";
    if (o.json) {
      doc["status"] = "error";
      doc["exit_code"] = code;
      doc["error"] = {{"code", kind}, {"detail", detail}, {"message", message}};
      out << doc.dump(2) << "\n";
    }
    return code;
  };

  try {
    Command cmd(o, flags, name);
    doc["field"] = cmd.field().to_string();
    Outcome r = cmd.execute();
    if (o.json) {
      doc["status"] = r.code == kSuccess ? "ok" : "negative";
      doc["exit_code"] = r.code;
      doc["result"] = std::move(r.result);
      out << doc.dump(2) << "\n";
    } else {
      out << r.text;
    }
    return r.code;
  } catch (const UsageError& e) {
    return fail(kUsage, "usage", e.what(), "");
  } catch (const DegeneracyError& e) {
    return fail(exit_code_for(e.code()), std::string(e.code_name()), e.what(), e.detail());
  } catch (const Error& e) {
    return fail(exit_code_for(e.code()), std::string(e.code_name()), e.what(), "");
  }
}

}  // namespace projdyn::cli
