#include "dynkin/cli/output.hpp"

#include <sstream>

#include "dynkin/cli/spec_file.hpp"

namespace dynkin::cli {

using nlohmann::json;

json set_labels(const StateSpace& states, const StoppingSet& set) {
  json out = json::array();
  for (std::size_t x : set.members()) out.push_back(states.label(x));
  return out;
}

namespace {

template <Scalar T>
json float_vector(const std::vector<T>& v) {
  json out = json::array();
  for (const T& x : v) out.push_back(to_double(x));
  return out;
}

template <Scalar T>
json exact_vector(const std::vector<T>& v) {
  json out = json::array();
  for (const T& x : v) out.push_back(format_scalar(x));
  return out;
}

}  // namespace

template <Scalar T>
json solution_json(const GameSpec<T>& spec, const Solution<T>& sol) {
  json doc;
  doc["states"] = spec.states.labels();
  doc["value"] = float_vector(sol.value);
  if constexpr (FieldTraits<T>::kExact) doc["value_exact"] = exact_vector(sol.value);
  doc["sup_stop"] = set_labels(spec.states, sol.sup_stop);
  doc["inf_stop"] = set_labels(spec.states, sol.inf_stop);
  doc["shortcut"] = sol.shortcut_used;
  doc["mode"] = to_string(sol.trace.mode);
  doc["outer_iterations"] = sol.outer_iterations();
  doc["total_inner_steps"] = sol.trace.total_inner_steps;
  doc["v0_stop_set"] = set_labels(spec.states, sol.trace.v0.stop_set);
  json iterations = json::array();
  for (std::size_t k = 0; k < sol.trace.outer.size(); ++k) {
    const auto& o = sol.trace.outer[k];
    iterations.push_back({{"k", k + 1},
                          {"S", set_labels(spec.states, o.inf_set)},
                          {"D", set_labels(spec.states, o.inner.stop_set)},
                          {"inner_steps", o.inner.iterations}});
  }
  doc["iterations"] = std::move(iterations);
  doc["metadata"] = {{"arithmetic", FieldTraits<T>::kName},
                     {"tolerance", to_double(spec.tolerance())},
                     {"tolerance_exact", format_scalar(spec.tolerance())}};
  return doc;
}

template <Scalar T>
json trace_json(const GameSpec<T>& spec, const Solution<T>& sol) {
  auto values = [](const std::vector<T>& v) {
    if constexpr (FieldTraits<T>::kExact) return exact_vector(v);
    else return float_vector(v);
  };
  json doc;
  doc["mode"] = to_string(sol.trace.mode);
  json v0 = json::array();
  for (const auto& it : sol.trace.v0.trace)
    v0.push_back({{"C", set_labels(spec.states, it.set)}, {"V", values(it.value)}});
  doc["one_player"] = {{"iterates", std::move(v0)},
                       {"stop_set", set_labels(spec.states, sol.trace.v0.stop_set)},
                       {"V0", values(sol.trace.v0.value)}};
  json outer = json::array();
  for (std::size_t k = 0; k < sol.trace.outer.size(); ++k) {
    const auto& o = sol.trace.outer[k];
    json inner = json::array();
    for (const auto& it : o.inner.trace)
      inner.push_back({{"D", set_labels(spec.states, it.set)}, {"V", values(it.value)}});
    outer.push_back({{"k", k + 1},
                     {"S", set_labels(spec.states, o.inf_set)},
                     {"inner", std::move(inner)},
                     {"D", set_labels(spec.states, o.inner.stop_set)},
                     {"V", values(o.inner.value)}});
  }
  doc["outer"] = std::move(outer);
  doc["total_inner_steps"] = sol.trace.total_inner_steps;
  return doc;
}

template <Scalar T>
json set_sequence_json(const GameSpec<T>& spec, const Solution<T>& sol) {
  json s = json::array(), d = json::array();
  for (const auto& o : sol.trace.outer) {
    s.push_back(set_labels(spec.states, o.inf_set));
    d.push_back(set_labels(spec.states, o.inner.stop_set));
  }
  return {{"outer_iterations", sol.outer_iterations()}, {"S", s}, {"D", d}};
}

template <Scalar T>
std::string values_csv(const GameSpec<T>& spec, const Solution<T>& sol) {
  std::ostringstream out;
  out << "state,psi,phi,V0";
  for (std::size_t k = 0; k < sol.trace.outer.size(); ++k) out << ",V" << k + 1;
  out << ",V\n";
  for (std::size_t x = 0; x < spec.size(); ++x) {
    out << spec.states.label(x) << ',' << format_double(to_double(spec.psi[x])) << ','
        << format_double(to_double(spec.phi[x])) << ','
        << format_double(to_double(sol.trace.v0.value[x]));
    for (const auto& o : sol.trace.outer) out << ',' << format_double(to_double(o.inner.value[x]));
    out << ',' << format_double(to_double(sol.value[x])) << '\n';
  }
  return out.str();
}

StoredSolution parse_solution_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<solution>", e.what());
  }
  auto labels = [&](const char* field) {
    if (!doc.contains(field) || !doc[field].is_array())
      throw ParseError(field, "missing or not an array");
    std::vector<std::string> out;
    for (const auto& v : doc[field]) {
      if (!v.is_string()) throw ParseError(field, "expected state labels");
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  StoredSolution s;
  const char* vf = doc.contains("value_exact") ? "value_exact" : "value";
  if (!doc.contains(vf) || !doc[vf].is_array()) throw ParseError(vf, "missing or not an array");
  for (const auto& v : doc[vf]) {
    if (v.is_string()) s.value.push_back(v.get<std::string>());
    else if (v.is_number()) s.value.push_back(format_double(v.get<double>()));
    else throw ParseError(vf, "expected numbers");
  }
  s.sup_stop = labels("sup_stop");
  s.inf_stop = labels("inf_stop");
  return s;
}

#define DYNKIN_INSTANTIATE_OUTPUT(T)                                                \
  template json solution_json<T>(const GameSpec<T>&, const Solution<T>&);           \
  template json trace_json<T>(const GameSpec<T>&, const Solution<T>&);              \
  template json set_sequence_json<T>(const GameSpec<T>&, const Solution<T>&);       \
  template std::string values_csv<T>(const GameSpec<T>&, const Solution<T>&);

DYNKIN_INSTANTIATE_OUTPUT(double)
DYNKIN_INSTANTIATE_OUTPUT(Rational)

}  // namespace dynkin::cli
