#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "padyn/cli.hpp"

namespace padyn::cli {

SpecError::SpecError(Kind kind, std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
        std::string s;
        for (const auto& d : diagnostics) {
          if (!s.empty()) s += '\n';
          if (d.line > 0) s += "line " + std::to_string(d.line) + ": ";
          s += std::string(to_string(kind)) + ": " + d.message;
          if (!d.key.empty()) s += " (" + d.key + ")";
        }
        return s;
      }()),
      kind_(kind),
      diagnostics_(std::move(diagnostics)) {}

std::string_view to_string(SpecError::Kind k) {
  return k == SpecError::Kind::Parse ? "ParseError" : "ValidationError";
}

namespace {

struct KindName {
  OperatorKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {OperatorKind::Identity, "identity"},
    {OperatorKind::Scalar, "scalar"},
    {OperatorKind::UnilateralShift, "unilateral-shift"},
    {OperatorKind::BilateralShift, "bilateral-shift"},
    {OperatorKind::ForwardShift, "forward-shift"},
    {OperatorKind::ForwardShiftBilateral, "forward-shift-bilateral"},
    {OperatorKind::LambdaMu, "lambda-mu"},
    {OperatorKind::RightInverse, "right-inverse"},
    {OperatorKind::FiniteDim, "finite-dim"},
};

constexpr const char* kTargets[] = {"transitivity", "scaling", "lambda-mu", "lem3", "finite-dim"};

}  // namespace

std::string_view to_string(OperatorKind k) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == k) return kn.name;
  }
  return "unknown";
}

std::string_view to_string(PropertyChoice p) {
  switch (p) {
    case PropertyChoice::Hypercyclic: return "hypercyclic";
    case PropertyChoice::Supercyclic: return "supercyclic";
    case PropertyChoice::Both: return "both";
  }
  return "unknown";
}

bool WeightSection::present() const {
  return forward_prefix.present() || forward_period.present() || backward_prefix.present() ||
         backward_period.present();
}

// ------------------------------------------------------------------ syntax

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Each literal parser throws std::invalid_argument with a short reason.
std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

bool digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

mpq_class parse_rational(const std::string& s) {
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw std::invalid_argument("expected a rational num/den, got '" + s + "'");
  const mpz_class d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  mpq_class q(mpz_class{std::string(num)}, d);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("expected true or false, got '" + s + "'");
}

// "[a, b, c]" -> {"a", "b", "c"}; "[]" -> {}.
std::vector<std::string> parse_list(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw std::invalid_argument("expected a bracketed list, got '" + s + "'");
  }
  const std::string inner = trim(std::string_view(s).substr(1, s.size() - 2));
  std::vector<std::string> out;
  if (inner.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = inner.find(',', start);
    const std::string item = trim(std::string_view(inner).substr(start, comma - start));
    if (item.empty()) throw std::invalid_argument("empty list element in '" + s + "'");
    out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& item : parse_list(s)) out.push_back(parse_int(item));
  return out;
}

std::vector<mpq_class> parse_rational_list(const std::string& s) {
  std::vector<mpq_class> out;
  for (const auto& item : parse_list(s)) out.push_back(parse_rational(item));
  return out;
}

VectorLiteral parse_vector(const std::string& s) {
  VectorLiteral out;
  std::set<std::int64_t> seen;
  for (const auto& item : parse_list(s)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected index:value, got '" + item + "'");
    const std::int64_t i = parse_int(trim(std::string_view(item).substr(0, colon)));
    if (!seen.insert(i).second) throw std::invalid_argument("index " + std::to_string(i) + " repeated");
    out.emplace_back(i, parse_rational(trim(std::string_view(item).substr(colon + 1))));
  }
  return out;
}

IndexDomain parse_domain(const std::string& s) {
  if (s == "N") return IndexDomain::Naturals;
  if (s == "Z") return IndexDomain::Integers;
  throw std::invalid_argument("expected N or Z, got '" + s + "'");
}

OperatorKind parse_kind(const std::string& s) {
  for (const auto& kn : kKindNames) {
    if (s == kn.name) return kn.kind;
  }
  throw std::invalid_argument("unknown operator kind '" + s + "'");
}

PropertyChoice parse_property(const std::string& s) {
  if (s == "hypercyclic") return PropertyChoice::Hypercyclic;
  if (s == "supercyclic") return PropertyChoice::Supercyclic;
  if (s == "both") return PropertyChoice::Both;
  throw std::invalid_argument("expected hypercyclic, supercyclic or both, got '" + s + "'");
}

std::string parse_word(const std::string& s, const char* const* first, const char* const* last, const char* what) {
  if (std::find_if(first, last, [&](const char* w) { return s == w; }) == last) {
    throw std::invalid_argument(std::string("unknown ") + what + " '" + s + "'");
  }
  return s;
}

void set_weight(WeightSection& w, const std::string& key, const std::string& value) {
  WeightList* list = nullptr;
  std::string base = key;
  const bool by_value = key.size() > 7 && key.compare(key.size() - 7, 7, ".values") == 0;
  if (by_value) base = key.substr(0, key.size() - 7);
  if (base == "forward.prefix") list = &w.forward_prefix;
  else if (base == "forward.period") list = &w.forward_period;
  else if (base == "backward.prefix") list = &w.backward_prefix;
  else if (base == "backward.period") list = &w.backward_period;
  else throw std::out_of_range(key);
  if (by_value) list->values = parse_rational_list(value);
  else list->valuations = parse_int_list(value);
}

void set_ball(BallSpec& b, const std::string& key, const std::string& value) {
  if (key == "center") b.center = parse_vector(value);
  else if (key == "radius") b.radius = parse_int(value);
  else if (key == "closed") b.closed = parse_bool(value);
  else throw std::out_of_range(key);
}

// Throws std::out_of_range for an unknown key, std::invalid_argument for a bad literal.
void set_key(ExperimentSpec& spec, const std::string& section, const std::string& key, const std::string& value) {
  if (section == "field") {
    if (key == "prime") spec.field.prime = parse_int(value);
    else if (key == "precision") spec.field.precision = parse_int(value);
    else throw std::out_of_range(key);
  } else if (section == "operator") {
    auto& o = spec.op;
    if (key == "kind") o.kind = parse_kind(value);
    else if (key == "lambda") o.lambda = parse_rational(value);
    else if (key == "mu") o.mu = parse_rational(value);
    else if (key == "domain") o.domain = parse_domain(value);
    else if (key == "dim") o.dim = parse_int(value);
    else throw std::out_of_range(key);
  } else if (section == "weights") {
    set_weight(spec.weights, key, value);
  } else if (section == "perturbation") {
    set_weight(spec.perturbation, key, value);
  } else {
    auto& c = spec.command;
    if (key == "name") c.name = parse_word(value, std::begin(kCommands), std::end(kCommands), "command");
    else if (key == "property") c.property = parse_property(value);
    else if (key == "target") c.target = parse_word(value, std::begin(kTargets), std::end(kTargets), "target");
    else if (key == "vector") c.vector = parse_vector(value);
    else if (key == "n_max") c.n_max = parse_int(value);
    else if (key == "depth") c.depth = parse_int(value);
    else if (key == "basis_bound") c.basis_bound = parse_int(value);
    else if (key == "max_threshold") c.max_threshold = parse_int(value);
    else if (key == "multiplier") c.multiplier = parse_int(value);
    else if (key == "k_max") c.k_max = parse_int(value);
    else if (key == "samples") c.samples = parse_int(value);
    else if (key == "seed") c.seed = parse_uint(value);
    else if (key == "det") c.det = parse_rational(value);
    else if (key.rfind("u.", 0) == 0) set_ball(c.u, key.substr(2), value);
    else if (key.rfind("v.", 0) == 0) set_ball(c.v, key.substr(2), value);
    else if (key == "pair") {
      const auto bar = value.find('|');
      if (bar == std::string::npos) throw std::invalid_argument("expected 'x | y', got '" + value + "'");
      c.pairs.emplace_back(parse_vector(trim(std::string_view(value).substr(0, bar))),
                           parse_vector(trim(std::string_view(value).substr(bar + 1))));
    } else {
      throw std::out_of_range(key);
    }
  }
}

const std::set<std::string> kSections = {"field", "operator", "weights", "perturbation", "command"};

}  // namespace

ExperimentSpec parse_spec_syntax(const std::string& text) {
  ExperimentSpec spec;
  std::vector<Diagnostic> diags;
  std::set<std::string> sections_seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(std::string_view(raw).substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        diags.push_back({line, {}, "unterminated section header"});
        continue;
      }
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      if (kSections.count(section) == 0) {
        diags.push_back({line, {}, "unknown section [" + section + "]"});
      } else if (!sections_seen.insert(section).second) {
        diags.push_back({line, {}, "duplicate section [" + section + "]"});
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      diags.push_back({line, {}, "expected 'key = value'"});
      continue;
    }
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (section.empty()) {
      diags.push_back({line, key, "key outside any section"});
      continue;
    }
    if (kSections.count(section) == 0) continue;
    const std::string full = section + "." + key;
    if (full != "command.pair" && spec.lines.count(full) != 0) {
      diags.push_back({line, full, "duplicate key (first defined on line " + std::to_string(spec.lines[full]) + ")"});
      continue;
    }
    try {
      set_key(spec, section, key, value);
      spec.lines.emplace(full, line);
    } catch (const std::out_of_range&) {
      diags.push_back({line, full, "unknown key"});
    } catch (const std::invalid_argument& e) {
      diags.push_back({line, full, e.what()});
    }
  }
  if (!diags.empty()) throw SpecError(SpecError::Kind::Parse, std::move(diags));
  return spec;
}

// -------------------------------------------------------------- validation

namespace {

class Validator {
 public:
  explicit Validator(const ExperimentSpec& s) : spec_(s) {}

  void fail(const std::string& key, const std::string& message) {
    const auto it = spec_.lines.find(key);
    diags_.push_back({it == spec_.lines.end() ? 0 : it->second, key, message});
  }
  void forbid(bool present, const std::string& key, const std::string& why) {
    if (present) fail(key, why);
  }
  void at_least(const std::optional<std::int64_t>& v, std::int64_t lo, const std::string& key) {
    if (v && *v < lo) fail(key, "must be >= " + std::to_string(lo));
  }

  void weights(const WeightSection& w, const std::string& section, bool bilateral) {
    const std::pair<const WeightList*, const char*> lists[] = {{&w.forward_prefix, "forward.prefix"},
                                                               {&w.forward_period, "forward.period"},
                                                               {&w.backward_prefix, "backward.prefix"},
                                                               {&w.backward_period, "backward.period"}};
    for (const auto& [list, name] : lists) {
      const std::string key = section + "." + name;
      if (list->valuations && list->values) fail(key, "both valuations and values given");
      if (list->values) {
        for (const auto& q : *list->values) {
          if (q == 0) fail(key + ".values", "zero weight");
        }
      }
    }
    if (!w.forward_period.present()) fail(section + ".forward.period", "missing forward period");
    const bool period_empty = (w.forward_period.valuations && w.forward_period.valuations->empty()) ||
                              (w.forward_period.values && w.forward_period.values->empty());
    if (period_empty) fail(section + ".forward.period", "empty period");
    if (bilateral) {
      if (!w.backward_period.present()) fail(section + ".backward.period", "missing backward period (bilateral)");
      const bool back_empty = (w.backward_period.valuations && w.backward_period.valuations->empty()) ||
                              (w.backward_period.values && w.backward_period.values->empty());
      if (back_empty) fail(section + ".backward.period", "empty period");
    } else {
      forbid(w.backward_prefix.present() || w.backward_period.present(), section + ".backward.period",
             "backward weights given for a unilateral operator");
    }
  }

  void run() {
    const auto& f = spec_.field;
    if (!f.prime) {
      fail("field.prime", "missing prime");
    } else if (*f.prime < 2 || *f.prime > 0x7fffffff || !is_prime(static_cast<std::uint64_t>(*f.prime))) {
      fail("field.prime", std::to_string(*f.prime) + " is not prime");
    }
    at_least(f.precision, 1, "field.precision");

    const auto& o = spec_.op;
    const bool shift = o.kind && (*o.kind == OperatorKind::UnilateralShift || *o.kind == OperatorKind::BilateralShift ||
                                  *o.kind == OperatorKind::ForwardShift ||
                                  *o.kind == OperatorKind::ForwardShiftBilateral);
    if (o.kind) {
      const OperatorKind k = *o.kind;
      const bool uses_lambda = k == OperatorKind::Scalar || k == OperatorKind::LambdaMu || k == OperatorKind::RightInverse;
      const bool uses_mu = k == OperatorKind::LambdaMu || k == OperatorKind::RightInverse;
      if (uses_lambda && !o.lambda) fail("operator.lambda", "missing lambda");
      if (uses_mu && !o.mu) fail("operator.mu", "missing mu");
      forbid(!uses_lambda && o.lambda.has_value(), "operator.lambda", "not used by this operator kind");
      forbid(!uses_mu && o.mu.has_value(), "operator.mu", "not used by this operator kind");
      if (k == OperatorKind::RightInverse && o.mu && *o.mu == 0) fail("operator.mu", "mu must be nonzero");
      if (k == OperatorKind::FiniteDim) {
        if (!o.dim) fail("operator.dim", "missing dim");
        at_least(o.dim, 1, "operator.dim");
      } else {
        forbid(o.dim.has_value(), "operator.dim", "only used by finite-dim");
      }
      if (shift) {
        const bool bilateral = k == OperatorKind::BilateralShift || k == OperatorKind::ForwardShiftBilateral;
        if (o.domain && *o.domain != (bilateral ? IndexDomain::Integers : IndexDomain::Naturals)) {
          fail("operator.domain", "domain does not match the shift kind");
        }
        if (!spec_.weights.present()) fail("weights.forward.period", "missing [weights] for a shift");
        else weights(spec_.weights, "weights", bilateral);
        if (spec_.perturbation.present()) weights(spec_.perturbation, "perturbation", bilateral);
      } else {
        forbid(spec_.weights.present(), "weights.forward.period", "weights given for an operator without weights");
      }
      forbid(k == OperatorKind::FiniteDim && o.domain.has_value(), "operator.domain", "not used by finite-dim");
    } else {
      forbid(o.lambda || o.mu || o.domain || o.dim, "operator.kind", "missing operator kind");
      forbid(spec_.weights.present(), "operator.kind", "weights given without an operator kind");
    }
    forbid(!shift && spec_.perturbation.present(), "perturbation.forward.period",
           "perturbation only applies to weighted shifts");

    const auto& c = spec_.command;
    at_least(c.n_max, 0, "command.n_max");
    at_least(c.depth, 1, "command.depth");
    at_least(c.basis_bound, 1, "command.basis_bound");
    at_least(c.max_threshold, 1, "command.max_threshold");
    at_least(c.multiplier, 1, "command.multiplier");
    at_least(c.samples, 1, "command.samples");
    if (c.k_max && (*c.k_max < 2 || *c.k_max > 30)) fail("command.k_max", "must lie in [2, 30]");
    if (c.det && *c.det == 0) fail("command.det", "det must be nonzero");
    for (const auto* b : {&c.u, &c.v}) {
      const std::string name = b == &c.u ? "command.u" : "command.v";
      if ((b->radius || b->closed) && !b->center) fail(name + ".center", "missing ball center");
      if (b->center && !b->radius) fail(name + ".radius", "missing ball radius");
    }
    if (!diags_.empty()) throw SpecError(SpecError::Kind::Validation, std::move(diags_));
  }

 private:
  const ExperimentSpec& spec_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

void validate_spec(const ExperimentSpec& spec) { Validator(spec).run(); }

ExperimentSpec parse_spec(const std::string& text) {
  ExperimentSpec spec = parse_spec_syntax(text);
  validate_spec(spec);
  return spec;
}

// ----------------------------------------------------------- serialization

namespace {

template <class T, class F>
std::string join(const std::vector<T>& xs, F&& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += f(xs[i]);
  }
  return s + "]";
}

std::string q(const mpq_class& v) { return v.get_str(); }

std::string vec(const VectorLiteral& v) {
  return join(v, [](const auto& e) { return std::to_string(e.first) + ":" + q(e.second); });
}

void put_weights(std::ostringstream& os, const WeightSection& w, const char* section) {
  if (!w.present()) return;
  os << "\n[" << section << "]\n";
  const std::pair<const WeightList*, const char*> lists[] = {{&w.forward_prefix, "forward.prefix"},
                                                             {&w.forward_period, "forward.period"},
                                                             {&w.backward_prefix, "backward.prefix"},
                                                             {&w.backward_period, "backward.period"}};
  for (const auto& [list, name] : lists) {
    if (list->valuations) os << name << " = " << join(*list->valuations, [](auto v) { return std::to_string(v); }) << '\n';
    if (list->values) os << name << ".values = " << join(*list->values, q) << '\n';
  }
}

}  // namespace

std::string serialize_spec(const ExperimentSpec& spec) {
  std::ostringstream os;
  os << "[field]\n";
  if (spec.field.prime) os << "prime = " << *spec.field.prime << '\n';
  if (spec.field.precision) os << "precision = " << *spec.field.precision << '\n';
  const auto& o = spec.op;
  if (o.kind || o.lambda || o.mu || o.domain || o.dim) {
    os << "\n[operator]\n";
    if (o.kind) os << "kind = " << to_string(*o.kind) << '\n';
    if (o.lambda) os << "lambda = " << q(*o.lambda) << '\n';
    if (o.mu) os << "mu = " << q(*o.mu) << '\n';
    if (o.domain) os << "domain = " << (*o.domain == IndexDomain::Naturals ? "N" : "Z") << '\n';
    if (o.dim) os << "dim = " << *o.dim << '\n';
  }
  put_weights(os, spec.weights, "weights");
  put_weights(os, spec.perturbation, "perturbation");
  const auto& c = spec.command;
  std::ostringstream cs;
  if (c.name) cs << "name = " << *c.name << '\n';
  if (c.property) cs << "property = " << to_string(*c.property) << '\n';
  if (c.target) cs << "target = " << *c.target << '\n';
  if (c.vector) cs << "vector = " << vec(*c.vector) << '\n';
  const std::pair<const std::optional<std::int64_t>*, const char*> ints[] = {
      {&c.n_max, "n_max"}, {&c.depth, "depth"}, {&c.basis_bound, "basis_bound"}, {&c.max_threshold, "max_threshold"},
      {&c.multiplier, "multiplier"}, {&c.k_max, "k_max"}, {&c.samples, "samples"}};
  for (const auto& [v, name] : ints) {
    if (*v) cs << name << " = " << **v << '\n';
  }
  if (c.seed) cs << "seed = " << *c.seed << '\n';
  if (c.det) cs << "det = " << q(*c.det) << '\n';
  for (const auto* b : {&c.u, &c.v}) {
    const char* n = b == &c.u ? "u" : "v";
    if (b->center) cs << n << ".center = " << vec(*b->center) << '\n';
    if (b->radius) cs << n << ".radius = " << *b->radius << '\n';
    if (b->closed) cs << n << ".closed = " << (*b->closed ? "true" : "false") << '\n';
  }
  for (const auto& [x, y] : c.pairs) cs << "pair = " << vec(x) << " | " << vec(y) << '\n';
  if (!cs.str().empty()) os << "\n[command]\n" << cs.str();
  return os.str();
}

}  // namespace padyn::cli
