#include "toruspec/serialization.hpp"

#include "toruspec/util.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

namespace toruspec {

namespace {

Json int_to_json(const Int& v) {
  // Plain JSON integer when it fits, decimal string otherwise.
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected integer or decimal string");
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(Int(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected rational as \"p/q\" string or integer");
}

}  // namespace

Json to_json(const ExactReal& a) {
  Json j;
  if (a.is_rational()) {
    const Rational& r = std::get<Rational>(a.storage());
    j["tag"] = "rational";
    j["p"] = int_to_json(num(r));
    j["q"] = int_to_json(den(r));
  } else if (a.is_quadratic()) {
    const auto& q = std::get<QuadIrr>(a.storage());
    j["tag"] = "quad";
    j["a"] = format_rational(q.a);
    j["b"] = format_rational(q.b);
    j["d"] = int_to_json(q.d);
  } else if (a.is_liouville()) {
    const auto& l = std::get<FactorialLiouville>(a.storage());
    j["tag"] = "liouville";
    j["base"] = int_to_json(l.base);
    j["depth"] = l.depth;
    if (l.offset != 0) j["offset"] = format_rational(l.offset);
  } else {
    j["tag"] = "float";
    j["v"] = std::get<FloatApprox>(a.storage()).v;
  }
  return j;
}

ExactReal exact_real_from_json(const Json& j) {
  const std::string tag = j.at("tag").get<std::string>();
  if (tag == "rational") return ExactReal(Rational(int_from_json(j.at("p")), int_from_json(j.at("q"))));
  if (tag == "quad")
    return ExactReal(QuadIrr{rational_from_json(j.at("a")), rational_from_json(j.at("b")),
                             int_from_json(j.at("d"))});
  if (tag == "liouville") {
    FactorialLiouville l{int_from_json(j.at("base")), j.at("depth").get<int>()};
    if (j.contains("offset")) l.offset = rational_from_json(j.at("offset"));
    return ExactReal(l);
  }
  if (tag == "float") return ExactReal(FloatApprox{j.at("v").get<double>()});
  throw std::invalid_argument("unknown ExactReal tag: " + tag);
}

Json to_json(const SystemSpec& sys) {
  Json j;
  j["n"] = sys.n;
  Json coeffs = Json::array();
  for (const TrigPoly& p : sys.coefficients) {
    Json terms = Json::array();
    for (const auto& [k, c] : p.terms()) {
      Json t;
      t["freq"] = k;
      t["re"] = format_rational(c.re);
      t["im"] = format_rational(c.im);
      terms.push_back(std::move(t));
    }
    coeffs.push_back(std::move(terms));
  }
  j["coefficients"] = std::move(coeffs);
  if (sys.constant_part) {
    Json cs = Json::array();
    for (const ExactReal& a : *sys.constant_part) cs.push_back(to_json(a));
    j["constants"] = std::move(cs);
  }
  return j;
}

SystemSpec system_from_json(const Json& j) {
  SystemSpec sys;
  sys.n = j.at("n").get<int>();
  for (const Json& terms : j.at("coefficients")) {
    std::vector<std::pair<FreqVec, CoeffC>> list;
    for (const Json& t : terms) {
      FreqVec k = t.at("freq").get<FreqVec>();
      list.emplace_back(std::move(k), CoeffC{rational_from_json(t.at("re")),
                                             rational_from_json(t.at("im"))});
    }
    sys.coefficients.push_back(TrigPoly::from_terms(sys.n, list));
  }
  if (j.contains("constants")) {
    std::vector<ExactReal> cs;
    for (const Json& c : j.at("constants")) cs.push_back(exact_real_from_json(c));
    sys.constant_part = std::move(cs);
  }
  sys.validate();
  return sys;
}

SystemSpec load_system(const std::string& path) {
  return system_from_json(Json::parse(read_text_file(path)));
}

Json to_json(const PartialFourierField& u) {
  Json j;
  j["n"] = u.n();
  j["xi_window"] = u.xi_window();
  j["t_window"] = u.t_window();
  j["real"] = u.real_flag();
  j["lossy"] = u.lossy();
  Json slices = Json::array();
  for (const auto& [xi, s] : u.slices()) {
    Json slice;
    slice["xi"] = xi;
    Json coeffs = Json::array();
    for (long i = 0; i < s.size(); ++i) {
      if (s(i) == std::complex<double>(0.0, 0.0)) continue;
      Json c;
      c["tau"] = u.tau_of(i);
      c["re"] = s(i).real();
      c["im"] = s(i).imag();
      coeffs.push_back(std::move(c));
    }
    slice["coeffs"] = std::move(coeffs);
    slices.push_back(std::move(slice));
  }
  j["xi"] = std::move(slices);
  return j;
}

PartialFourierField field_from_json(const Json& j) {
  PartialFourierField u(j.at("n").get<int>(), j.at("xi_window").get<std::int64_t>(),
                        j.at("t_window").get<int>());
  if (j.contains("real")) u.set_real_flag(j.at("real").get<bool>());
  for (const Json& slice : j.at("xi")) {
    const auto xi = slice.at("xi").get<std::int64_t>();
    for (const Json& c : slice.at("coeffs")) {
      const auto tau = c.at("tau").get<std::vector<int>>();
      u.set_coeff(tau, xi, {c.at("re").get<double>(), c.at("im").get<double>()});
    }
  }
  return u;
}

PartialFourierField load_field(const std::string& path) {
  return field_from_json(Json::parse(read_text_file(path)));
}

Json to_json(const WitnessSequence& w) {
  Json j;
  j["C0"] = format_rational(w.C0);
  Json entries = Json::array();
  for (const WitnessEntry& e : w.entries) {
    Json je;
    Json taus = Json::array();
    for (const Int& t : e.tau) taus.push_back(int_to_json(t));
    je["tau"] = std::move(taus);
    je["xi"] = int_to_json(e.xi);
    je["nu"] = e.nu;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

WitnessSequence witness_from_json(const Json& j) {
  WitnessSequence w;
  w.C0 = parse_rational(j.at("C0").get<std::string>());
  for (const Json& je : j.at("entries")) {
    WitnessEntry e;
    for (const Json& t : je.at("tau")) e.tau.push_back(int_from_json(t));
    e.xi = int_from_json(je.at("xi"));
    e.nu = je.at("nu").get<int>();
    w.entries.push_back(std::move(e));
  }
  return w;
}

Json to_json(const ScanTable& t) {
  Json j;
  j["rho_hat"] = t.rho_hat;
  j["fit_points"] = t.fit_points;
  Json rows = Json::array();
  for (const ScanRow& r : t.rows) {
    Json jr;
    jr["xi"] = int_to_json(r.xi);
    jr["m_lo"] = format_rational(r.m_lo);
    jr["m_hi"] = format_rational(r.m_hi);
    jr["exact"] = r.exact;
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  return j;
}

namespace {
Json to_json(const LowerBoundCert& c) {
  Json j;
  j["C"] = format_rational(c.C);
  j["rho"] = format_rational(c.rho);
  j["proof_tag"] = c.proof_tag;
  return j;
}
}  // namespace

Json to_json(const SaVerdict& v) {
  Json j;
  j["status"] = v.status == SaStatus::SA ? "SA" : (v.status == SaStatus::NotSA ? "NotSA" : "Undetermined");
  j["note"] = v.note;
  if (v.witness) j["witness"] = to_json(*v.witness);
  if (v.bound) j["bound"] = to_json(*v.bound);
  j["scan"] = to_json(v.scan);
  return j;
}

Json to_json(const GsVerdict& v) {
  Json j;
  j["status"] =
      v.status == GsStatus::Holds ? "Holds" : (v.status == GsStatus::Fails ? "Fails" : "Undetermined");
  j["gamma"] = v.gamma_description;
  j["xi_zero_note"] = v.xi_zero_note;
  if (v.bound) j["bound"] = to_json(*v.bound);
  if (v.violating) j["violating_witness"] = to_json(*v.violating);
  j["scan"] = to_json(v.scan);
  return j;
}

Json to_json(const DecayReport& r) {
  Json j;
  switch (r.verdict) {
    case DecayVerdict::RapidDecay: j["verdict"] = "RapidDecay"; break;
    case DecayVerdict::PolynomialGrowth: j["verdict"] = "PolynomialGrowth"; break;
    default: j["verdict"] = "Inconclusive";
  }
  j["k_hat"] = r.k_hat;
  j["c_hat"] = r.c_hat;
  if (r.m_hat) j["m_hat"] = *r.m_hat;
  j["fit_residual"] = r.fit_residual;
  j["ls_residual"] = r.ls_residual;
  j["all_zero"] = r.all_zero;
  j["threshold"] = r.threshold;
  Json bands = Json::array();
  for (const DecayBand& b : r.bands) {
    Json jb;
    jb["band"] = b.m;
    jb["log1p_xi"] = b.log1p_xi;
    jb["sup"] = b.sup;
    bands.push_back(std::move(jb));
  }
  j["bands"] = std::move(bands);
  return j;
}

Json to_json(const FiniteTypeReport& r) {
  Json j;
  j["exists"] = r.exists;
  if (r.witness_pair) j["witness_pair"] = {r.witness_pair->first, r.witness_pair->second};
  if (r.witness_point) j["witness_point"] = *r.witness_point;
  if (r.reciprocal_sup_bound) j["reciprocal_sup_bound"] = *r.reciprocal_sup_bound;
  if (r.bracket) {
    Json terms = Json::array();
    for (const auto& [k, c] : r.bracket->terms()) {
      Json t;
      t["freq"] = k;
      t["re"] = format_rational(c.re);
      t["im"] = format_rational(c.im);
      terms.push_back(std::move(t));
    }
    j["bracket"] = std::move(terms);
  }
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["property"] = property_name(v.property);
  j["status"] = status_name(v.status);
  Json reasons = Json::array();
  for (const auto& [tag, ref] : v.reasons) reasons.push_back({{"theorem", tag}, {"certificate", ref}});
  j["reasons"] = std::move(reasons);
  Json certs;
  if (v.finite_type) certs["finite_type"] = to_json(*v.finite_type);
  if (v.sa) certs["sa"] = to_json(*v.sa);
  if (v.gs) certs["gs"] = to_json(*v.gs);
  j["certificates"] = std::move(certs);
  std::ostringstream hash;
  hash << std::hex << fnv1a64(j.dump());
  j["certificate_hash"] = hash.str();
  return j;
}

Json to_json(const ClassifyResult& r) {
  Json j = Json::array();
  for (const Verdict& v : r.verdicts) j.push_back(to_json(v));
  return j;
}

Json to_json(const SolveReport& r) {
  Json j;
  Json obs = Json::array();
  for (const SolveObstruction& o : r.obstructions) {
    Json jo;
    jo["xi"] = o.xi;
    jo["kind"] = o.kind;
    jo["divisor"] = o.divisor;
    obs.push_back(std::move(jo));
  }
  j["obstructions"] = std::move(obs);
  Json res;
  for (const auto& [xi, v] : r.mode_residual) res[std::to_string(xi)] = v;
  j["mode_residual"] = std::move(res);
  Json chosen;
  for (const auto& [xi, v] : r.chosen_j) chosen[std::to_string(xi)] = v;
  j["chosen_j"] = std::move(chosen);
  j["compatibility_checked"] = r.compatibility_checked;
  j["compatibility_residual"] = r.compatibility_residual;
  return j;
}

std::string scan_table_csv(const ScanTable& t) {
  std::ostringstream os;
  os << "xi,m_xi_num,m_xi_den\n";
  for (const ScanRow& r : t.rows)
    os << r.xi.str() << "," << num(r.m_hi).str() << "," << den(r.m_hi).str() << "\n";
  return os.str();
}

std::string decay_csv(const DecayReport& r) {
  std::ostringstream os;
  os << "band,sup,fit\n";
  for (const DecayBand& b : r.bands) {
    const double fit = r.c_hat * std::exp(-r.k_hat * b.log1p_xi);
    os << b.m << "," << b.sup << "," << fit << "\n";
  }
  return os.str();
}

std::string grid_dump_csv(const PartialFourierField& u, std::int64_t xi) {
  std::ostringstream os;
  for (int i = 0; i < u.n(); ++i) os << "t" << (i + 1) << ",";
  os << "re,im\n";
  const Eigen::VectorXcd* s = u.slice(xi);
  if (!s) return os.str();
  const int G = 2 * u.t_window() + 1;
  const Eigen::VectorXcd grid = synthesize_grid(*s, u.n(), u.t_window(), G);
  const double h = 2.0 * std::numbers::pi / G;
  for (long idx = 0; idx < grid.size(); ++idx) {
    long rem = idx;
    std::vector<double> t(u.n());
    for (int i = u.n() - 1; i >= 0; --i) {
      t[i] = h * static_cast<double>(rem % G);
      rem /= G;
    }
    for (int i = 0; i < u.n(); ++i) os << t[i] << ",";
    os << grid(idx).real() << "," << grid(idx).imag() << "\n";
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace toruspec
