#include "repsum/instance_io.hpp"

#include <fstream>

#include "repsum/errors.hpp"

namespace repsum {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

Natural read_natural(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInstance(std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_string()) throw InvalidInstance(std::string("field \"") + key + "\" must be a decimal string");
  return parse_natural(v.get<std::string>());
}

Json subset_json(const Subset& s) { return Json(std::vector<std::uint32_t>(s.indices().begin(), s.indices().end())); }

Subset subset_from(const Json& j) {
  if (!j.is_array()) throw InvalidInstance("subset must be an array of indices");
  std::vector<std::uint32_t> idx;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw InvalidInstance("subset indices must be positive integers");
    idx.push_back(x.get<std::uint32_t>());
  }
  try {
    return Subset(std::move(idx));
  } catch (const ContractViolation& e) {
    throw InvalidInstance(e.what());
  }
}

}  // namespace

Json to_json(const ProblemInstance& instance) {
  Json j;
  j["variant"] = std::string(instance.name());
  Json items = Json::array();
  for (const auto& a : instance.items().values()) items.push_back(to_string(a));
  j["items"] = std::move(items);
  std::visit(Overloaded{
                 [&](const SubsetSum& v) { j["target"] = to_string(v.target); },
                 [&](const TwoSubsetSum& v) { j["target"] = to_string(v.target); },
                 [&](const EqualSums&) {},
                 [&](const ShiftedSums& v) { j["shift"] = to_string(v.shift); },
                 [&](const PigeonholeEqualSums&) {},
                 [&](const PigeonholeModularEqualSums& v) { j["modulus"] = to_string(v.modulus); },
                 [&](const ModularSubsetSum& v) {
                   j["target"] = to_string(v.target);
                   j["modulus"] = to_string(v.modulus);
                 },
                 [&](const ModularShiftedSums& v) {
                   j["shift"] = to_string(v.shift);
                   j["modulus"] = to_string(v.modulus);
                 },
             },
             instance.variant());
  return j;
}

ProblemInstance instance_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInstance("instance must be a JSON object");
  if (!j.contains("variant") || !j.at("variant").is_string()) throw InvalidInstance("missing variant");
  if (!j.contains("items") || !j.at("items").is_array()) throw InvalidInstance("missing items array");
  std::vector<Natural> values;
  for (const auto& x : j.at("items")) {
    if (!x.is_string()) throw InvalidInstance("items must be decimal strings");
    values.push_back(parse_natural(x.get<std::string>()));
  }
  Items items(std::move(values));
  const auto name = j.at("variant").get<std::string>();
  Variant v;
  if (name == "subset_sum") {
    v = SubsetSum{read_natural(j, "target")};
  } else if (name == "two_subset_sum") {
    v = TwoSubsetSum{read_natural(j, "target")};
  } else if (name == "equal_sums") {
    v = EqualSums{};
  } else if (name == "shifted_sums") {
    v = ShiftedSums{read_natural(j, "shift")};
  } else if (name == "pigeonhole_equal") {
    v = PigeonholeEqualSums{};
  } else if (name == "pigeonhole_modular") {
    v = PigeonholeModularEqualSums{read_natural(j, "modulus")};
  } else if (name == "modular_subset_sum") {
    v = ModularSubsetSum{read_natural(j, "target"), read_natural(j, "modulus")};
  } else if (name == "modular_shifted_sums") {
    v = ModularShiftedSums{read_natural(j, "shift"), read_natural(j, "modulus")};
  } else {
    throw InvalidInstance("unknown variant \"" + name + "\"");
  }
  return ProblemInstance(std::move(items), std::move(v));
}

Json to_json(const Solution& solution) {
  return std::visit(Overloaded{
                        [](const SingleSubset& s) { return Json{{"kind", "subset"}, {"set", subset_json(s.set)}}; },
                        [](const SubsetPair& s) {
                          return Json{{"kind", "pair"}, {"first", subset_json(s.first)}, {"second", subset_json(s.second)}};
                        },
                        [](const Multiplicities& m) {
                          return Json{{"kind", "multiplicities"}, {"e", std::vector<int>(m.e.begin(), m.e.end())}};
                        },
                    },
                    solution);
}

Solution solution_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InvalidInstance("solution needs a kind");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "subset") return SingleSubset{subset_from(j.at("set"))};
  if (kind == "pair") return SubsetPair{subset_from(j.at("first")), subset_from(j.at("second"))};
  if (kind == "multiplicities") {
    Multiplicities m;
    for (const auto& x : j.at("e")) {
      const int e = x.get<int>();
      if (e < 0 || e > 2) throw InvalidInstance("multiplicities must lie in {0, 1, 2}");
      m.e.push_back(static_cast<std::uint8_t>(e));
    }
    return m;
  }
  throw InvalidInstance("unknown solution kind \"" + kind + "\"");
}

Json to_json(const SolveOutcome& outcome) {
  const auto& t = outcome.trace;
  Json trace{{"algorithm", t.algorithm}, {"samples", t.samples}, {"draws", t.draws}, {"enumerated", t.enumerated}};
  if (t.size) trace["size"] = *t.size;
  if (t.ratio) trace["l"] = *t.ratio;
  if (t.b) trace["b"] = *t.b;
  if (t.prime) trace["p"] = to_string(*t.prime);
  if (t.residue) trace["k"] = to_string(*t.residue);
  Json phases = Json::object();
  for (const auto& [name, ms] : t.phase_ms) phases[name] = ms;
  trace["phase_ms"] = std::move(phases);
  trace["notes"] = t.notes;
  Json j{{"verdict", std::string(verdict_name(outcome.verdict))}, {"trace", std::move(trace)}};
  j["solution"] = outcome.solution ? to_json(*outcome.solution) : Json(nullptr);
  return j;
}

Json to_json(const StatReport& r) {
  Json details = Json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  return Json{{"quantity", r.quantity}, {"trials", r.trials},   {"seed", r.seed},
              {"estimate", r.estimate}, {"bound", r.bound},     {"std_error", r.std_error},
              {"rule", r.rule},         {"pass", r.pass},       {"details", std::move(details)}};
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInstance(path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const std::filesystem::path& path, const ProblemInstance& instance) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(instance).dump(2) << '\n';
}

std::filesystem::path witness_path(const std::filesystem::path& instance_path) {
  return instance_path.string() + ".witness.json";
}

}  // namespace repsum
