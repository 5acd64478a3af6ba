#include "l4scc/scenario_io.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "l4scc/error.hpp"
#include "l4scc/units.hpp"

namespace l4scc {

namespace {

void reject_unknown(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  if (!map.IsMap()) throw ParseError(where + " must be a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError("unknown key '" + key + "' in " + where);
  }
}

double quantity(const YAML::Node& node, Dimension dim, const std::string& what) {
  if (!node.IsScalar()) throw ParseError(what + " must be a scalar");
  try {
    return parse_quantity(node.as<std::string>(), dim);
  } catch (const ParseError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

double optional_quantity(const YAML::Node& map, const char* key, Dimension dim, double dflt,
                         const std::string& where) {
  const YAML::Node node = map[key];
  return node ? quantity(node, dim, where + "." + key) : dflt;
}

ControlLaw parse_law(const std::string& name, const YAML::Node& params,
                     const std::string& where) {
  const YAML::Node p = params ? params : YAML::Node(YAML::NodeType::Map);
  const std::string pw = where + ".params";
  if (name == "dctcp") {
    reject_unknown(p, {"v0"}, pw);
    return DctcpLike{optional_quantity(p, "v0", Dimension::dimensionless, defaults::kV0, pw)};
  }
  if (name == "compromise4") {
    reject_unknown(p, {"c0"}, pw);
    return Compromise4{optional_quantity(p, "c0", Dimension::dimensionless, defaults::kC0, pw)};
  }
  if (name == "compromise5") {
    reject_unknown(p, {"v0", "r0"}, pw);
    return Compromise5{optional_quantity(p, "v0", Dimension::dimensionless, defaults::kV0, pw),
                       optional_quantity(p, "r0", Dimension::time, defaults::kR0, pw)};
  }
  if (name == "classic") {
    reject_unknown(p, {}, pw);
    return ClassicTcp{};
  }
  throw ParseError(where + ".law: unknown law '" + name +
                   "' (expected dctcp, compromise4, compromise5 or classic)");
}

FlowSpec parse_flow(const YAML::Node& node, std::size_t index) {
  const std::string where = "flows[" + std::to_string(index) + "]";
  reject_unknown(node, {"id", "base_rtt", "segment_size", "law", "params"}, where);
  FlowSpec flow;
  flow.id = node["id"] ? node["id"].as<std::string>() : "flow" + std::to_string(index);
  if (!node["base_rtt"]) throw ParseError(where + ": base_rtt is required");
  flow.base_rtt = quantity(node["base_rtt"], Dimension::time, where + ".base_rtt");
  flow.segment_size = optional_quantity(node, "segment_size", Dimension::size,
                                        defaults::kSegmentSize, where);
  if (!node["law"]) throw ParseError(where + ": law is required");
  flow.law = parse_law(node["law"].as<std::string>(), node["params"], where);
  return flow;
}

}  // namespace

Scenario parse_scenario(std::string_view text, bool allow_empty) {
  Scenario scn;
  try {
    const YAML::Node root = YAML::Load(std::string(text));
    reject_unknown(root, {"capacity", "queue_delay", "classic_queue_delay", "coupling", "flows"},
                   "scenario");
    if (!root["capacity"]) throw ParseError("scenario: capacity is required");
    scn.capacity = quantity(root["capacity"], Dimension::rate, "capacity");
    scn.queue_delay = optional_quantity(root, "queue_delay", Dimension::time,
                                        defaults::kL4sQueueDelay, "scenario");
    scn.classic_queue_delay = optional_quantity(root, "classic_queue_delay", Dimension::time,
                                                defaults::kClassicQueueDelay, "scenario");
    if (const YAML::Node c = root["coupling"]) {
      reject_unknown(c, {"k", "exponent"}, "coupling");
      scn.coupling.k =
          optional_quantity(c, "k", Dimension::dimensionless, defaults::kCouplingK, "coupling");
      const double e = optional_quantity(c, "exponent", Dimension::dimensionless,
                                         defaults::kCouplingExponent, "coupling");
      if (e != std::floor(e)) throw ParseError("coupling.exponent must be an integer");
      scn.coupling.exponent = static_cast<int>(e);
    }
    const YAML::Node flows = root["flows"];
    if (!flows) throw ParseError("scenario: flows is required");
    if (!flows.IsSequence()) throw ParseError("flows must be a list");
    for (std::size_t i = 0; i < flows.size(); ++i) scn.flows.push_back(parse_flow(flows[i], i));
    scn.validate(allow_empty);
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("YAML: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid scenario: ") + e.what());
  }
  return scn;
}

Scenario load_scenario(const std::filesystem::path& path, bool allow_empty) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), allow_empty);
}

std::string dump_scenario(const Scenario& scn) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "capacity" << YAML::Value << format_quantity(scn.capacity, Dimension::rate);
  out << YAML::Key << "queue_delay" << YAML::Value
      << format_quantity(scn.queue_delay, Dimension::time);
  out << YAML::Key << "classic_queue_delay" << YAML::Value
      << format_quantity(scn.classic_queue_delay, Dimension::time);
  out << YAML::Key << "coupling" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "k" << YAML::Value
      << format_quantity(scn.coupling.k, Dimension::dimensionless);
  out << YAML::Key << "exponent" << YAML::Value << scn.coupling.exponent;
  out << YAML::EndMap;
  out << YAML::Key << "flows" << YAML::Value << YAML::BeginSeq;
  for (const auto& f : scn.flows) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << YAML::DoubleQuoted << f.id;
    out << YAML::Key << "base_rtt" << YAML::Value << format_quantity(f.base_rtt, Dimension::time);
    out << YAML::Key << "segment_size" << YAML::Value
        << format_quantity(f.segment_size, Dimension::size);
    out << YAML::Key << "law" << YAML::Value << std::string(law_name(kind_of(f.law)));
    out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
    std::visit(
        [&](const auto& law) {
          using T = std::decay_t<decltype(law)>;
          const auto bare = [](double v) { return format_quantity(v, Dimension::dimensionless); };
          if constexpr (std::is_same_v<T, DctcpLike>) {
            out << YAML::Key << "v0" << YAML::Value << bare(law.v0);
          } else if constexpr (std::is_same_v<T, Compromise4>) {
            out << YAML::Key << "c0" << YAML::Value << bare(law.c0);
          } else if constexpr (std::is_same_v<T, Compromise5>) {
            out << YAML::Key << "v0" << YAML::Value << bare(law.v0);
            out << YAML::Key << "r0" << YAML::Value << format_quantity(law.r0, Dimension::time);
          }
        },
        f.law);
    out << YAML::EndMap;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace l4scc
