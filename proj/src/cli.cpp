#include "loewy/cli.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "loewy/kl.hpp"
#include "loewy/loewy.hpp"
#include "loewy/oracle.hpp"
#include "loewy/periodic.hpp"

namespace loewy::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kSubcommands = {"roots", "kl", "phat", "q", "loewy", "check", "oracle"};
const std::vector<std::string> kChecks = {"inversion", "loewy-length", "head-socle", "parity",
                                          "w-I-factors", "dimension",   "oracle-diff", "all"};

std::string join_weight(const Weight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s;
}

std::string quote(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\"'\\") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + '"';
}

std::vector<std::string> split_args(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  bool in_token = false, quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '\\' && i + 1 < text.size()) {
        cur += text[++i];
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = in_token = true;
    } else if (c == ' ' || c == '\t') {
      if (in_token) out.push_back(cur);
      cur.clear();
      in_token = false;
    } else {
      cur += c;
      in_token = true;
    }
  }
  if (quoted) throw UsageError("unterminated quote in: " + text);
  if (in_token) out.push_back(cur);
  return out;
}

// Contract failures carry a kind for the failure record.
struct ContractFailure : std::runtime_error {
  std::string kind;
  json detail;
  ContractFailure(std::string k, const std::string& msg, json d = json::object())
      : std::runtime_error(msg), kind(std::move(k)), detail(std::move(d)) {}
};

class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {
    PeriodicOptions opts;
    opts.max_extra_depth = cfg.max_depth;
    registry_ = std::make_unique<EngineRegistry>(opts);
    if (!cfg.no_cache) {
      std::string dir = cfg.cache_dir;
      if (dir.empty())
        if (const char* env = std::getenv("LOEWY_CACHE_DIR")) dir = env;
      registry_->set_cache_dir(dir);
    }
  }

  void execute() {
    const bool pair_cmd = cfg_.subcommand == "kl" || cfg_.subcommand == "phat" || cfg_.subcommand == "q";
    if (!pair_cmd && (cfg_.mu || cfg_.x || cfg_.y)) throw UsageError("--mu, --x and --y only apply to kl, phat and q");
    if (cfg_.subcommand == "roots") return roots();
    if (cfg_.subcommand == "kl" || cfg_.subcommand == "phat" || cfg_.subcommand == "q") return polynomial();
    if (cfg_.subcommand == "loewy") return loewy_table();
    if (cfg_.subcommand == "check") return check();
    if (cfg_.subcommand == "oracle") return oracle_table();
    throw UsageError("unknown subcommand " + cfg_.subcommand);
  }

  void save() { registry_->save_all(); }

 private:
  const RootDatum& datum() {
    if (!datum_) {
      if (cfg_.type.empty()) throw UsageError("--type is required");
      try {
        datum_ = std::make_unique<RootDatum>(RootDatum::build(cfg_.type));
      } catch (const UnsupportedType& e) {
        throw UsageError(e.what());
      }
      for (int i : cfg_.I)
        if (i < 0 || i >= datum_->rank())
          throw UsageError("simple-root index " + std::to_string(i + 1) + " out of range for " + cfg_.type);
    }
    return *datum_;
  }

  long long prime() {
    if (cfg_.p < 2) throw UsageError("--p is required");
    for (long long d = 2; d * d <= cfg_.p; ++d)
      if (cfg_.p % d == 0) throw UsageError("p must be prime");
    return cfg_.p;
  }

  Weight checked_weight(const Weight& w, const char* what) {
    if (static_cast<int>(w.size()) != datum().rank())
      throw UsageError(std::string(what) + " must have " + std::to_string(datum().rank()) + " coordinates");
    return w;
  }

  // lambda from --lambda, from --alcove as x.0, or 0.
  Weight lambda() {
    const RootDatum& d = datum();
    if (cfg_.lambda && cfg_.alcove) throw UsageError("give either --lambda or --alcove");
    Weight lam(d.rank(), 0);
    if (cfg_.lambda) lam = checked_weight(*cfg_.lambda, "--lambda");
    if (cfg_.alcove) {
      AffineWeyl aff(d);
      lam = aff.weight_in(word_alcove(aff, *cfg_.alcove), Weight(d.rank(), 0), prime());
    }
    if (!is_regular(d, lam, prime()))
      throw UsageError("weight " + format_weight(lam) + " is not p-regular for p=" + std::to_string(cfg_.p));
    if (cfg_.window_cap > 0) {
      const std::size_t n = box_window(d, lam, cfg_.p).size();
      if (static_cast<long long>(n) > cfg_.window_cap)
        throw ContractFailure("WindowCapExceeded", "window of " + std::to_string(n) + " weights exceeds --window-cap",
                              {{"window_size", n}});
    }
    return lam;
  }

  static Alcove word_alcove(const AffineWeyl& aff, const std::string& word) {
    try {
      return aff.from_word(aff.parse_word(word));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  void roots() {
    const RootDatum& d = datum();
    ParabolicDatum par(d, cfg_.I);
    auto word = [&](int w) {
      std::string s;
      for (int g : d.weyl(w).word) s += "s" + std::to_string(g + 1);
      return s.empty() ? std::string("e") : s;
    };
    json j;
    j["type"] = d.label();
    j["rank"] = d.rank();
    j["cartan"] = d.cartan();
    j["weyl_order"] = d.weyl_order();
    j["coxeter_number"] = d.coxeter_number();
    json roots = json::array();
    for (const auto& r : d.positive_roots())
      roots.push_back({{"weight", r.weight}, {"root_coords", r.root_coords}, {"height", r.height}});
    j["positive_roots"] = roots;
    std::vector<int> one_based;
    for (int i : par.subset()) one_based.push_back(i + 1);
    j["I"] = one_based;
    j["w_I"] = word(par.w_I());
    j["w^I"] = word(par.w_upper());
    j["predicted_loewy_length"] = d.weyl(par.w_upper()).length + 1;
    std::vector<std::string> reps;
    for (int w : par.min_coset_reps()) reps.push_back(word(w));
    j["min_coset_reps"] = reps;
    if (cfg_.format == "json") {
      out_ << j.dump(2) << '\n';
      return;
    }
    if (cfg_.format == "csv") {
      out_ << "root,weight,root_coords,height\n";
      for (std::size_t k = 0; k < d.positive_roots().size(); ++k) {
        const auto& r = d.positive_roots()[k];
        out_ << k << ",\"" << format_weight(r.weight) << "\",\"" << format_weight(r.root_coords) << "\","
             << r.height << '\n';
      }
      return;
    }
    out_ << "type " << d.label() << " rank " << d.rank() << " |W|=" << d.weyl_order()
         << " h=" << d.coxeter_number() << '\n';
    out_ << "cartan";
    for (const auto& row : d.cartan()) out_ << ' ' << format_weight(row);
    out_ << '\n' << "positive roots (weight, root coordinates):\n";
    for (const auto& r : d.positive_roots())
      out_ << "  " << format_weight(r.weight) << ' ' << format_weight(r.root_coords) << '\n';
    out_ << "I={" << format_subset(par.subset()) << "} w_I=" << word(par.w_I()) << " w^I=" << word(par.w_upper())
         << " predicted_loewy_length=" << d.weyl(par.w_upper()).length + 1 << '\n';
    out_ << "W^I:";
    for (const auto& r : reps) out_ << ' ' << r;
    out_ << '\n';
  }

  // kl/phat/q of x, y given as words (--x, --y) or as weights (--mu, --lambda with --p).
  void polynomial() {
    const RootDatum& d = datum();
    PeriodicEngine& eng = registry_->get(d);
    const AffineWeyl& aff = eng.affine();
    auto endpoint = [&](const std::optional<std::string>& w, const std::optional<Weight>& wt, const char* wname,
                        const char* tname) {
      if (w && wt) throw UsageError(std::string("give either ") + wname + " or " + tname);
      if (w) return word_alcove(aff, *w);
      if (!wt) throw UsageError(std::string(wname) + " or " + tname + " is required");
      const Weight v = checked_weight(*wt, tname);
      if (!is_regular(d, v, prime())) throw UsageError("weight " + format_weight(v) + " is not p-regular");
      return aff.alcove_of(v, cfg_.p);
    };
    const Alcove a = endpoint(cfg_.x, cfg_.mu, "--x", "--mu");
    const Alcove b = endpoint(cfg_.y, cfg_.lambda, "--y", "--lambda");
    HalfLaurent v;
    if (cfg_.subcommand == "kl") {
      KLEngine kl(aff);
      v = kl.kl(a, b);
    } else if (cfg_.subcommand == "phat") {
      v = eng.phat(a, b);
    } else {
      v = eng.q(a, b);
    }
    json j;
    j["type"] = d.label();
    j["polynomial"] = cfg_.subcommand;
    j["x"] = aff.word_string(a);
    j["y"] = aff.word_string(b);
    // Weights are reported in the orbit of 0 (or of the given weights) when p is known.
    std::optional<Weight> xw, yw;
    if (cfg_.p > 0) {
      const Weight zero(d.rank(), 0);
      const bool zero_regular = is_regular(d, zero, prime());
      if (cfg_.mu) xw = *cfg_.mu;
      else if (zero_regular) xw = aff.weight_in(a, zero, cfg_.p);
      if (cfg_.lambda) yw = *cfg_.lambda;
      else if (zero_regular) yw = aff.weight_in(b, zero, cfg_.p);
      j["p"] = cfg_.p;
      if (xw) j["x_weight"] = *xw;
      if (yw) j["y_weight"] = *yw;
    }
    j["value"] = v.to_string();
    j["terms"] = json::array();
    for (const auto& [k, c] : v.terms()) j["terms"].push_back({{"doubled_exponent", k}, {"coeff", c}});
    if (cfg_.format == "json") {
      out_ << j.dump(2) << '\n';
    } else if (cfg_.format == "csv") {
      out_ << "doubled_exponent,coeff\n";
      for (const auto& [k, c] : v.terms()) out_ << k << ',' << c << '\n';
    } else {
      out_ << cfg_.subcommand << ' ' << d.label() << " x=" << aff.word_string(a);
      if (xw) out_ << ' ' << format_weight(*xw);
      out_ << " y=" << aff.word_string(b);
      if (yw) out_ << ' ' << format_weight(*yw);
      out_ << '\n' << v.to_string() << '\n';
    }
  }

  void emit_table(const LoewyTable& t) {
    if (cfg_.format == "json") {
      json j = t.to_json();
      AffineWeyl aff(datum());
      j["lambda_alcove_word"] = aff.word_string(aff.alcove_of(t.lambda, t.p));
      out_ << j.dump(2) << '\n';
    } else if (cfg_.format == "csv") {
      out_ << t.to_csv();
    } else {
      out_ << t.to_text();
    }
  }

  void loewy_table() {
    const Weight lam = lambda();
    emit_table(layer_table(*registry_, datum(), cfg_.I, lam, cfg_.p));
  }

  void oracle_table() {
    const Weight lam = lambda();
    try {
      emit_table(oracle_layer_table(datum(), cfg_.I, lam, cfg_.p));
    } catch (const oracle::UnsupportedAlgebra& e) {
      throw UsageError(e.what());
    }
  }

  struct CheckResult {
    std::string name;
    bool ok = true;
    bool skipped = false;
    std::vector<std::string> details;
  };

  void check() {
    const RootDatum& d = datum();
    const std::vector<std::string> names =
        cfg_.check == "all" ? std::vector<std::string>(kChecks.begin(), kChecks.end() - 1)
                            : std::vector<std::string>{cfg_.check};
    if (cfg_.check == "oracle-diff" && d.label() != "A1" && d.label() != "A2")
      throw UsageError("oracle-diff supports A1 and A2 only");
    const Weight lam = lambda();
    std::optional<LoewyTable> table;
    auto get_table = [&]() -> const LoewyTable& {
      if (!table) table = layer_table(*registry_, d, cfg_.I, lam, cfg_.p);
      return *table;
    };
    std::vector<CheckResult> results;
    for (const std::string& name : names) {
      CheckResult r;
      r.name = name;
      try {
        if (name == "inversion") {
          const InversionReport rep = inversion_check(registry_->get(d), lam, cfg_.p);
          r.ok = rep.ok();
          r.details = rep.messages;
          r.details.insert(r.details.begin(), std::to_string(rep.pairs_checked) + " pairs");
        } else if (name == "loewy-length") {
          r.details.push_back("loewy_length " + std::to_string(checked_loewy_length(get_table(), d)));
        } else if (name == "head-socle") {
          r.details = socle_head_violations(get_table(), d);
          r.ok = r.details.empty();
          const Weight h1 = head_weight(d, lam, cfg_.p, cfg_.I);
          const Weight h2 = head_weight_closed_form(d, lam, cfg_.p, cfg_.I);
          if (h1 != h2) {
            r.ok = false;
            r.details.push_back("head forms differ: " + format_weight(h1) + " vs " + format_weight(h2));
          }
          if (r.ok) r.details.push_back("head " + format_weight(h1));
        } else if (name == "parity") {
          r.details = parity_violations(get_table(), d);
          r.ok = r.details.empty();
        } else if (name == "w-I-factors") {
          for (const Placement& pl : verify_placements(get_table(), d))
            r.details.push_back(format_weight(pl.weight) + " at layer " + std::to_string(pl.layer));
        } else if (name == "dimension") {
          const DimensionReport rep = dimension_check(*registry_, get_table(), d);
          r.details.push_back(std::to_string(rep.lhs) + " = " + std::to_string(rep.rhs));
        } else if (name == "oracle-diff") {
          if (d.label() != "A1" && d.label() != "A2") {
            r.skipped = true;
            r.details.push_back("no oracle for " + d.label());
          } else {
            r.details = table_differences(get_table(), oracle_layer_table(d, cfg_.I, lam, cfg_.p));
            r.ok = r.details.empty();
          }
        }
      } catch (const PredictionMismatch& e) {
        r.ok = false;
        r.details.push_back(e.what());
      } catch (const DimensionMismatch& e) {
        r.ok = false;
        r.details.push_back(e.what());
      }
      results.push_back(std::move(r));
    }

    bool all_ok = true;
    json j = json::array();
    for (const auto& r : results) {
      all_ok = all_ok && r.ok;
      j.push_back({{"check", r.name}, {"ok", r.ok}, {"skipped", r.skipped}, {"details", r.details}});
    }
    if (cfg_.format == "json") {
      out_ << json{{"type", d.label()}, {"p", cfg_.p}, {"lambda", lam}, {"I", one_based(cfg_.I)},
                   {"ok", all_ok}, {"results", j}}
                  .dump(2)
           << '\n';
    } else if (cfg_.format == "csv") {
      out_ << "check,status\n";
      for (const auto& r : results) out_ << r.name << ',' << (r.skipped ? "skip" : r.ok ? "ok" : "FAIL") << '\n';
    } else {
      for (const auto& r : results) {
        out_ << r.name << ": " << (r.skipped ? "skip" : r.ok ? "ok" : "FAIL");
        for (const auto& s : r.details) out_ << "\n  " << s;
        out_ << '\n';
      }
    }
    if (!all_ok) {
      std::vector<std::string> failed;
      for (const auto& r : results)
        if (!r.ok) failed.push_back(r.name);
      throw ContractFailure("CheckFailed", "checks failed", {{"failed", failed}});
    }
  }

  static std::vector<int> one_based(const std::vector<int>& I) {
    std::vector<int> v;
    for (int i : I) v.push_back(i + 1);
    return v;
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::unique_ptr<RootDatum> datum_;
  std::unique_ptr<EngineRegistry> registry_;
};

}  // namespace

Weight parse_weight(const std::string& text) {
  Weight w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" ()");
    const auto e = tok.find_last_not_of(" ()");
    if (b == std::string::npos) throw UsageError("bad weight: \"" + text + "\"");
    tok = tok.substr(b, e - b + 1);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw UsageError("bad weight: \"" + text + "\"");
    w.push_back(v);
  }
  if (w.empty()) throw UsageError("empty weight");
  return w;
}

std::vector<int> parse_subset(const std::string& text) {
  std::vector<int> I;
  if (text.find_first_not_of(" {}") == std::string::npos) return I;
  for (long long v : parse_weight(text)) {
    if (v < 1 || v > 3) throw UsageError("simple-root index " + std::to_string(v) + " out of range");
    I.push_back(static_cast<int>(v - 1));
  }
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  return I;
}

std::vector<std::string> RunConfig::to_args() const {
  std::vector<std::string> a{subcommand};
  if (subcommand == "check") a.push_back(check);
  if (!type.empty()) a.push_back("--type=" + type);
  std::string s;
  for (std::size_t k = 0; k < I.size(); ++k) s += (k ? "," : "") + std::to_string(I[k] + 1);
  if (!s.empty()) a.push_back("--I=" + s);
  if (lambda) a.push_back("--lambda=" + join_weight(*lambda));
  if (mu) a.push_back("--mu=" + join_weight(*mu));
  if (alcove) a.push_back("--alcove=" + *alcove);
  if (x) a.push_back("--x=" + *x);
  if (y) a.push_back("--y=" + *y);
  if (p) a.push_back("--p=" + std::to_string(p));
  a.push_back("--format=" + format);
  if (!cache_dir.empty()) a.push_back("--cache-dir=" + cache_dir);
  if (no_cache) a.push_back("--no-cache");
  a.push_back("--max-depth=" + std::to_string(max_depth));
  if (window_cap) a.push_back("--window-cap=" + std::to_string(window_cap));
  return a;
}

std::string RunConfig::canonical() const {
  std::string s;
  for (const auto& arg : to_args()) {
    if (!s.empty()) s += ' ';
    const auto eq = arg.find('=');
    s += eq == std::string::npos ? quote(arg) : arg.substr(0, eq + 1) + quote(arg.substr(eq + 1));
  }
  return s;
}

RunConfig parse_args(const std::vector<std::string>& args, std::string* help) {
  RunConfig cfg;
  CLI::App app{"Loewy layers of parabolically induced modules from periodic Kazhdan-Lusztig polynomials",
               "loewy"};
  app.require_subcommand(1);
  std::string I_text, lambda_text, mu_text;
  std::string alcove, x, y;
  for (const std::string& name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name);
    if (name == "check")
      sub->add_option("name", cfg.check, "one of inversion, loewy-length, head-socle, parity, w-I-factors, "
                                         "dimension, oracle-diff, all")
          ->check(CLI::IsMember(kChecks));
    sub->add_option("--type", cfg.type, "A1, A1xA1, A2, B2, G2 or A3");
    sub->add_option("--I", I_text, "simple roots of the Levi, 1-based, e.g. \"1,2\"");
    sub->add_option("--lambda", lambda_text, "weight in fundamental-weight coordinates, e.g. \"3,1\"");
    sub->add_option("--mu", mu_text, "first weight for kl/phat/q");
    sub->add_option("--alcove", alcove, "alcove word over s0..sr; the weight x.0 is used");
    sub->add_option("--x", x, "first alcove word for kl/phat/q");
    sub->add_option("--y", y, "second alcove word for kl/phat/q");
    sub->add_option("--p", cfg.p, "prime");
    sub->add_option("--format", cfg.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--cache-dir", cfg.cache_dir, "table cache directory (default $LOEWY_CACHE_DIR)");
    sub->add_flag("--no-cache", cfg.no_cache, "ignore the cache directory");
    sub->add_option("--max-depth", cfg.max_depth, "extra translation depth allowed for stabilization")
        ->check(CLI::Range(1, 64));
    sub->add_option("--window-cap", cfg.window_cap, "fail when the weight window exceeds this size")
        ->check(CLI::NonNegativeNumber);
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    if (help) *help = app.help();
    else throw UsageError(app.help());
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    if (help) *help = app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (CLI::App* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  for (const auto& [text, opt] : {std::pair{&lambda_text, &cfg.lambda}, std::pair{&mu_text, &cfg.mu}})
    if (!text->empty()) *opt = parse_weight(*text);
  cfg.I = parse_subset(I_text);
  for (const auto& [text, opt] : {std::pair{&alcove, &cfg.alcove}, std::pair{&x, &cfg.x}, std::pair{&y, &cfg.y}})
    if (!text->empty()) *opt = *text;
  return cfg;
}

RunConfig parse_canonical(const std::string& text) { return parse_args(split_args(text)); }

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto failure = [&](const std::string& kind, const std::string& msg, const json& detail) {
    json rec{{"status", "failure"}, {"error", kind}, {"message", msg}, {"config", cfg.canonical()}};
    if (!detail.empty()) rec["detail"] = detail;
    err << rec.dump() << '\n';
    return 1;
  };
  try {
    Session s(cfg, out);
    try {
      s.execute();
    } catch (...) {
      // Only certified values are stored, so partial progress is worth keeping.
      s.save();
      throw;
    }
    s.save();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ContractFailure& e) {
    return failure(e.kind, e.what(), e.detail);
  } catch (const StabilizationFailed& e) {
    return failure("StabilizationFailed", e.what(), {});
  } catch (const WindowTooSmall& e) {
    return failure("WindowTooSmall", e.what(), {});
  } catch (const InternalInconsistency& e) {
    return failure("InternalInconsistency", e.what(), {});
  } catch (const PredictionMismatch& e) {
    return failure("PredictionMismatch", e.what(), {});
  } catch (const DimensionMismatch& e) {
    return failure("DimensionMismatch", e.what(), {});
  } catch (const NotRegular& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::overflow_error& e) {
    return failure("Overflow", e.what(), {});
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string help;
  try {
    cfg = parse_args(args, &help);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun with --help for usage\n";
    return 2;
  }
  if (!help.empty()) {
    out << help;
    return 0;
  }
  return run(cfg, out, err);
}

}  // namespace loewy::cli
