#include "spw/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "spw/error.hpp"

namespace spw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const cplx kI(0.0, 1.0);

std::string format_complex(cplx c) {
  std::ostringstream out;
  out.precision(17);
  if (c.imag() == 0.0) {
    out << c.real();
  } else if (c.real() == 0.0) {
    out << c.imag() << 'i';
  } else {
    out << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << 'i';
  }
  return out.str();
}

// max over |theta| <= alpha of Re(a e^{i theta}) = |a| cos(theta + arg a).
double directional_max(cplx a, double alpha) {
  if (a == cplx(0.0, 0.0)) return 0.0;
  const double phi = std::arg(a);
  if (std::abs(phi) <= alpha) return std::abs(a);
  return std::max((a * std::polar(1.0, alpha)).real(), (a * std::polar(1.0, -alpha)).real());
}

double parse_real(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (first == last || ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::ConfigError, "cannot parse number '" + std::string(text) + "'");
  }
  return v;
}

std::map<std::string, std::string, std::less<>> parse_params(std::string_view text) {
  std::map<std::string, std::string, std::less<>> params;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorKind::ConfigError, "expected key=value, got '" + std::string(item) + "'");
    }
    params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return params;
}

double clamp_alpha(double alpha) {
  if (!(alpha > 0.0)) {
    std::ostringstream msg;
    msg << "requires 0 < alpha < pi/2, got alpha=" << alpha;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  return std::min(alpha, builtin_max_alpha());
}

}  // namespace

double builtin_max_alpha() { return std::numbers::pi / 2 - 1e-9; }

cplx TestFunction::eval_times_exp(cplx z, cplx w) const {
  if (log_eval) {
    const cplx l = log_eval(z) + w * z;
    if (l.real() == kNegInf) return 0.0;
    return std::exp(l);
  }
  return eval(z) * std::exp(w * z);
}

double TestFunction::log_modulus(cplx z) const {
  if (log_eval) return log_eval(z).real();
  const double m = std::abs(eval(z));
  return m == 0.0 ? kNegInf : std::log(m);
}

TestFunction make_exp_sum(std::vector<ExpTerm> terms, double alpha, std::string id) {
  alpha = clamp_alpha(alpha);

  std::vector<ExpTerm> merged;
  for (const ExpTerm& t : terms) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const ExpTerm& m) { return m.rate == t.rate; });
    if (it == merged.end()) {
      merged.push_back(t);
    } else {
      it->coeff += t.coeff;
    }
  }
  std::erase_if(merged, [](const ExpTerm& t) { return t.coeff == cplx(0.0, 0.0); });

  if (id.empty()) {
    std::ostringstream out;
    out << "sum:";
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (k) out << ',';
      out << 'c' << k << '=' << format_complex(terms[k].coeff) << ",a" << k << '='
          << format_complex(terms[k].rate);
    }
    id = out.str();
  }

  double h = 0.0;
  double envelope = 0.0;
  for (const ExpTerm& t : merged) {
    h = std::max(h, directional_max(t.rate, alpha));
    envelope += std::abs(t.coeff);
  }

  TestFunction fn{.id = std::move(id),
                  .eval = {},
                  .log_eval = {},
                  .spec = SectorSpec::make(alpha, h),
                  .max_alpha = builtin_max_alpha(),
                  .envelope = envelope,
                  .indicator_oracle = {},
                  .transform_oracle = {},
                  .frequency = {},
                  .singularities_of_g = {}};

  fn.eval = [merged](cplx z) {
    cplx s{};
    for (const ExpTerm& t : merged) s += t.coeff * std::exp(t.rate * z);
    return s;
  };
  fn.log_eval = [merged](cplx z) -> cplx {
    if (merged.empty()) return {kNegInf, 0.0};
    double shift = kNegInf;
    for (const ExpTerm& t : merged) shift = std::max(shift, (t.rate * z).real());
    cplx s{};
    for (const ExpTerm& t : merged) s += t.coeff * std::exp(t.rate * z - shift);
    if (s == cplx(0.0, 0.0)) return {kNegInf, 0.0};
    return std::log(s) + shift;
  };
  fn.indicator_oracle = [merged](double theta) {
    double best = kNegInf;
    for (const ExpTerm& t : merged) best = std::max(best, (t.rate * std::polar(1.0, theta)).real());
    return best;
  };
  fn.transform_oracle = [merged](double, cplx omega) {
    cplx g{};
    for (const ExpTerm& t : merged) g += -t.coeff / (2.0 * std::numbers::pi * kI * (omega + t.rate));
    return g;
  };
  fn.frequency = [merged](double theta) {
    double f = 0.0;
    for (const ExpTerm& t : merged) f = std::max(f, std::abs((t.rate * std::polar(1.0, theta)).imag()));
    return f;
  };
  for (const ExpTerm& t : merged) fn.singularities_of_g.push_back(-t.rate);
  return fn;
}

TestFunction make_exp(cplx a, double alpha) {
  return make_exp_sum({{1.0, a}}, alpha, "exp:a=" + format_complex(a));
}

TestFunction make_zero(double alpha) { return make_exp_sum({}, alpha, "zero"); }

TestFunction make_trig_decay(double alpha) { return make_exp_sum({{1.0, kI}}, alpha, "trig"); }

TestFunction make_rational(double alpha) {
  alpha = clamp_alpha(alpha);
  TestFunction fn{.id = "rational",
                  .eval = [](cplx z) { return 1.0 / (z + 1.0); },
                  .log_eval = [](cplx z) { return -std::log(z + 1.0); },
                  .spec = SectorSpec::make(alpha, 0.0),
                  .max_alpha = builtin_max_alpha(),
                  // |z + 1| >= 1 whenever Re z >= 0
                  .envelope = 1.0,
                  .indicator_oracle = [](double) { return 0.0; },
                  .transform_oracle = {},
                  .frequency = {},
                  .singularities_of_g = {}};
  return fn;
}

std::vector<TestFunction> builtin_catalog(double alpha) {
  std::vector<TestFunction> out;
  out.push_back(make_exp(-1.0, alpha));
  out.push_back(make_exp(1.0, alpha));
  out.push_back(make_zero(alpha));
  out.push_back(make_rational(alpha));
  out.push_back(make_trig_decay(alpha));
  out.push_back(make_exp_sum({{1.0, -1.0}, {2.0, -2.0}}, alpha));
  return out;
}

cplx parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorKind::ConfigError, "empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return parse_real(s);

  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_text = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_text = split == std::string::npos ? s : s.substr(split);
  if (im_text.empty() || im_text == "+") im_text = "1";
  if (im_text == "-") im_text = "-1";
  return {re_text.empty() ? 0.0 : parse_real(re_text), parse_real(im_text)};
}

TestFunction parse_function(std::string_view id, double alpha) {
  const auto colon = id.find(':');
  const std::string_view name = id.substr(0, colon);
  const auto params = colon == std::string_view::npos ? decltype(parse_params("")){}
                                                      : parse_params(id.substr(colon + 1));
  auto reject_params = [&] {
    if (!params.empty()) {
      throw Error(ErrorKind::ConfigError, "function '" + std::string(name) + "' takes no parameters");
    }
  };

  if (name == "exp") {
    const auto it = params.find("a");
    if (it == params.end() || params.size() != 1) {
      throw Error(ErrorKind::ConfigError, "exp expects exactly one parameter a=<complex>");
    }
    return make_exp(parse_complex(it->second), alpha);
  }
  if (name == "zero") {
    reject_params();
    return make_zero(alpha);
  }
  if (name == "rational") {
    reject_params();
    return make_rational(alpha);
  }
  if (name == "trig") {
    reject_params();
    return make_trig_decay(alpha);
  }
  if (name == "sum") {
    std::map<int, ExpTerm> terms;
    std::map<int, bool> has_rate;
    for (const auto& [key, value] : params) {
      if (key.size() < 2 || (key[0] != 'a' && key[0] != 'c')) {
        throw Error(ErrorKind::ConfigError, "sum parameters are c<k>=<complex> and a<k>=<complex>, got '" + key + "'");
      }
      const int k = static_cast<int>(parse_real(std::string_view(key).substr(1)));
      auto [it, inserted] = terms.try_emplace(k, ExpTerm{1.0, 0.0});
      if (key[0] == 'a') {
        it->second.rate = parse_complex(value);
        has_rate[k] = true;
      } else {
        it->second.coeff = parse_complex(value);
      }
    }
    std::vector<ExpTerm> list;
    for (const auto& [k, term] : terms) {
      if (!has_rate[k]) {
        throw Error(ErrorKind::ConfigError, "sum term " + std::to_string(k) + " has no rate a" + std::to_string(k));
      }
      list.push_back(term);
    }
    if (list.empty()) throw Error(ErrorKind::ConfigError, "sum needs at least one term");
    return make_exp_sum(std::move(list), alpha, std::string(id));
  }
  throw Error(ErrorKind::ConfigError, "unknown function '" + std::string(name) +
                                          "' (known: exp, zero, rational, trig, sum)");
}

double check_growth(const TestFunction& fn, const GrowthCertificate& cert, std::span<const cplx> grid) {
  double worst = 0.0;
  for (const cplx z : grid) {
    const double fz = std::abs(fn.eval(z));
    if (fz == 0.0) continue;
    const double bound = cert.c_epsilon * std::exp((fn.spec.h + cert.epsilon) * std::abs(z));
    worst = std::max(worst, bound == 0.0 ? std::numeric_limits<double>::infinity() : fz / bound);
  }
  return worst;
}

}  // namespace spw
