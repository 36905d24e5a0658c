#include "dynkin/cli/spec_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dynkin::cli {

using nlohmann::json;

ParseError::ParseError(std::string field, std::string message, std::size_t line)
    : Error(field + (line ? " (line " + std::to_string(line) + ")" : std::string()) + ": " +
            message),
      field_(std::move(field)),
      line_(line) {}

namespace {

std::string number_text(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return format_double(v.get<double>());
  throw ParseError(field, "expected a number or numeric string");
}

std::vector<std::string> number_list(const json& doc, const std::string& field) {
  if (!doc.contains(field)) throw ParseError(field, "missing field");
  const json& v = doc.at(field);
  if (!v.is_array()) throw ParseError(field, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number_text(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

SpecFile parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what(), line_of(text, e.byte));
  }
  if (!doc.is_object()) throw ParseError("<document>", "expected a JSON object");

  SpecFile spec;
  if (!doc.contains("states") || !doc["states"].is_array())
    throw ParseError("states", "missing or not an array");
  for (std::size_t i = 0; i < doc["states"].size(); ++i) {
    const json& s = doc["states"][i];
    if (s.is_string()) {
      spec.states.push_back(s.get<std::string>());
    } else if (s.is_number_integer()) {
      spec.states.push_back(std::to_string(s.get<long long>()));
    } else {
      throw ParseError("states[" + std::to_string(i) + "]", "expected a string label");
    }
  }

  if (!doc.contains("generator") || !doc["generator"].is_array())
    throw ParseError("generator", "missing or not an array");
  for (std::size_t i = 0; i < doc["generator"].size(); ++i) {
    const std::string field = "generator[" + std::to_string(i) + "]";
    const json& row = doc["generator"][i];
    if (!row.is_array()) throw ParseError(field, "expected an array");
    std::vector<std::string> r;
    for (std::size_t j = 0; j < row.size(); ++j)
      r.push_back(number_text(row[j], field + "[" + std::to_string(j) + "]"));
    spec.generator.push_back(std::move(r));
  }

  if (!doc.contains("beta")) throw ParseError("beta", "missing field");
  spec.beta = number_text(doc["beta"], "beta");
  spec.psi = number_list(doc, "psi");
  spec.phi = number_list(doc, "phi");

  if (doc.contains("init")) {
    if (!doc["init"].is_string()) throw ParseError("init", "expected \"strict\" or \"weak\"");
    spec.init = doc["init"].get<std::string>();
    if (spec.init != "strict" && spec.init != "weak")
      throw ParseError("init", "expected \"strict\" or \"weak\", got \"" + spec.init + "\"");
  }
  if (doc.contains("arithmetic")) {
    if (!doc["arithmetic"].is_string())
      throw ParseError("arithmetic", "expected \"float\" or \"rational\"");
    spec.arithmetic = doc["arithmetic"].get<std::string>();
    if (spec.arithmetic != "float" && spec.arithmetic != "rational")
      throw ParseError("arithmetic",
                       "expected \"float\" or \"rational\", got \"" + spec.arithmetic + "\"");
  }
  return spec;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

SpecFile load_spec_file(const std::filesystem::path& path) {
  return parse_spec_text(read_text(path));
}

namespace {

// Integers and plain decimals go out as JSON numbers, fractions as strings.
json number_json(const std::string& text) {
  if (text.find('/') != std::string::npos) return text;
  try {
    std::size_t used = 0;
    long long i = std::stoll(text, &used);
    if (used == text.size()) return i;
  } catch (const std::exception&) {
  }
  double d = parse_scalar<double>(text);
  if (format_double(d) == text) return d;
  return text;
}

}  // namespace

std::string dump_spec(const SpecFile& spec) {
  json doc;
  doc["states"] = spec.states;
  json gen = json::array();
  for (const auto& row : spec.generator) {
    json r = json::array();
    for (const auto& v : row) r.push_back(number_json(v));
    gen.push_back(std::move(r));
  }
  doc["generator"] = std::move(gen);
  doc["beta"] = number_json(spec.beta);
  json psi = json::array(), phi = json::array();
  for (const auto& v : spec.psi) psi.push_back(number_json(v));
  for (const auto& v : spec.phi) phi.push_back(number_json(v));
  doc["psi"] = std::move(psi);
  doc["phi"] = std::move(phi);
  doc["init"] = spec.init;
  doc["arithmetic"] = spec.arithmetic;
  return doc.dump(2) + "\n";
}

template <Scalar T>
GameSpec<T> to_game_spec(const SpecFile& file, std::optional<T> tol) {
  auto num = [](const std::string& text, const std::string& field) {
    try {
      return parse_scalar<T>(text);
    } catch (const std::exception&) {
      throw ParseError(field, "not a number: \"" + text + "\"");
    }
  };
  std::vector<std::vector<T>> gen;
  for (std::size_t i = 0; i < file.generator.size(); ++i) {
    std::vector<T> row;
    for (std::size_t j = 0; j < file.generator[i].size(); ++j)
      row.push_back(num(file.generator[i][j],
                        "generator[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    gen.push_back(std::move(row));
  }
  std::vector<T> psi, phi;
  for (std::size_t i = 0; i < file.psi.size(); ++i)
    psi.push_back(num(file.psi[i], "psi[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < file.phi.size(); ++i)
    phi.push_back(num(file.phi[i], "phi[" + std::to_string(i) + "]"));
  T beta = num(file.beta, "beta");
  return make_game_spec<T>(StateSpace(file.states), gen, std::move(beta), std::move(psi),
                           std::move(phi), std::move(tol));
}

template GameSpec<double> to_game_spec<double>(const SpecFile&, std::optional<double>);
template GameSpec<Rational> to_game_spec<Rational>(const SpecFile&, std::optional<Rational>);

}  // namespace dynkin::cli
