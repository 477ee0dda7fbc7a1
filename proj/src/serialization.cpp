#include "detsched/serialization.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "detsched/error.hpp"

namespace detsched {

namespace {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

const json& field(const json& object, const char* key, const std::string& path) {
  if (!object.is_object()) throw Error(ErrorKind::ParseError, path + ": expected an object");
  const auto it = object.find(key);
  if (it == object.end()) throw Error(ErrorKind::ParseError, path + "." + key + ": missing");
  return *it;
}

Rational rational_at(const json& value, const std::string& path) {
  if (!value.is_string()) throw Error(ErrorKind::ParseError, path + ": expected a \"p\" or \"p/q\" string");
  const std::string text = value.get<std::string>();
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw Error(ErrorKind::ParseError, path + ": \"" + text + "\" is not of the form p or p/q");
  }
}

std::uint64_t unsigned_at(const json& value, const std::string& path) {
  if (!value.is_number_unsigned()) throw Error(ErrorKind::ParseError, path + ": expected a non-negative integer");
  return value.get<std::uint64_t>();
}

const json& array_at(const json& value, const std::string& path) {
  if (!value.is_array()) throw Error(ErrorKind::ParseError, path + ": expected an array");
  return value;
}

ordered rationals(const std::vector<Rational>& values) {
  ordered out = ordered::array();
  for (const Rational& value : values) out.push_back(value.str());
  return out;
}

ordered ids(const std::vector<JobId>& order) {
  ordered out = ordered::array();
  for (JobId id : order) out.push_back(id.value);
  return out;
}

ordered schedule_json(const Schedule& schedule) {
  ordered out;
  out["order"] = ids(schedule.order);
  out["starts"] = rationals(schedule.starts);
  return out;
}

ordered instance_json(const Instance& instance) {
  ordered out;
  out["beta"] = instance.beta.str();
  out["jobs"] = ordered::array();
  for (const Job& job : instance.jobs) {
    out["jobs"].push_back({{"id", job.id.value}, {"alpha", job.alpha.str()}, {"release", job.release.str()}});
  }
  return out;
}

std::string dump(const ordered& value) { return value.dump(2) + "\n"; }

std::vector<IndexedValue> indexed_values(const json& list, const std::string& path) {
  std::vector<IndexedValue> values;
  array_at(list, path);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    values.push_back({unsigned_at(field(list[i], "index", at), at + ".index"),
                      rational_at(field(list[i], "value", at), at + ".value")});
  }
  return values;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  Instance instance;
  instance.beta = rational_at(field(doc, "beta", "$"), "$.beta");
  const json& jobs = array_at(field(doc, "jobs", "$"), "$.jobs");
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string at = "$.jobs[" + std::to_string(i) + "]";
    Job job;
    job.id = JobId{unsigned_at(field(jobs[i], "id", at), at + ".id")};
    job.alpha = rational_at(field(jobs[i], "alpha", at), at + ".alpha");
    job.release = rational_at(field(jobs[i], "release", at), at + ".release");
    instance.jobs.push_back(std::move(job));
  }
  validate_instance(instance);
  return instance;
}

std::string write_instance(const Instance& instance) { return dump(instance_json(instance)); }

Schedule parse_schedule(std::string_view text, const Instance& instance) {
  const json doc = parse_json(text);
  const json& order_json = array_at(field(doc, "order", "$"), "$.order");
  std::vector<JobId> order;
  for (std::size_t i = 0; i < order_json.size(); ++i) {
    order.push_back(JobId{unsigned_at(order_json[i], "$.order[" + std::to_string(i) + "]")});
  }
  require_permutation(instance, order);
  const auto starts_it = doc.find("starts");
  if (starts_it == doc.end() || starts_it->is_null()) return canonical_starts(instance, order);

  const json& starts_json = array_at(*starts_it, "$.starts");
  if (starts_json.size() != order.size()) {
    throw Error(ErrorKind::ParseError, "$.starts: has " + std::to_string(starts_json.size()) +
                                           " entries for " + std::to_string(order.size()) + " jobs");
  }
  Schedule schedule{order, {}};
  for (std::size_t i = 0; i < starts_json.size(); ++i) {
    schedule.starts.push_back(rational_at(starts_json[i], "$.starts[" + std::to_string(i) + "]"));
  }
  evaluate(instance, schedule);
  return schedule;
}

std::string write_schedule(const Schedule& schedule) { return dump(schedule_json(schedule)); }

std::string write_eval_report(const EvalReport& report) {
  ordered out;
  out["order"] = ids(report.order);
  out["starts"] = rationals(report.starts);
  out["completions"] = rationals(report.completions);
  out["gaps"] = rationals(report.gaps);
  out["makespan"] = report.makespan.str();
  out["total_completion"] = report.total_completion.str();
  return dump(out);
}

std::string write_opt_result(const OptResult& result) {
  ordered out;
  out["objective"] = std::string(to_string(result.objective));
  out["value"] = result.best_value.str();
  out["schedule"] = schedule_json(result.best_schedule);
  out["permutations_examined"] = result.permutations_examined;
  return dump(out);
}

std::string write_pm_report(const PmConstructionReport& report) {
  ordered out;
  out["reduced"] = report.reduced;
  out["last_critical_index"] = report.last_critical_index;
  if (report.reduced) out["instance"] = instance_json(report.instance);
  out["ni_schedule"] = schedule_json(report.ni_schedule);
  out["optimal_schedule"] = schedule_json(report.optimal_schedule);
  out["steps"] = ordered::array();
  for (const PmStep& step : report.steps) {
    ordered edges = ordered::array();
    for (const PmEdge& edge : step.matching.edges) edges.push_back({edge.a_index, edge.o_index});
    out["steps"].push_back({{"k", step.k},
                            {"edges", edges},
                            {"load", step.load.str()},
                            {"bound", step.bound.str()},
                            {"holds", step.load <= step.bound}});
  }
  return dump(out);
}

PmDocument parse_pm_document(std::string_view text) {
  const json doc = parse_json(text);
  PmDocument pm;
  pm.sets.beta = rational_at(field(doc, "beta", "$"), "$.beta");
  pm.sets.a_values = indexed_values(field(doc, "a", "$"), "$.a");
  pm.sets.o_values = indexed_values(field(doc, "o", "$"), "$.o");
  std::size_t n = std::max(pm.sets.a_values.size(), pm.sets.o_values.size());
  if (const auto it = doc.find("n"); it != doc.end()) n = std::max<std::size_t>(n, unsigned_at(*it, "$.n"));
  pm.sets.n = n;
  const json& edges = array_at(field(doc, "edges", "$"), "$.edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string at = "$.edges[" + std::to_string(i) + "]";
    if (!edges[i].is_array() || edges[i].size() != 2) throw Error(ErrorKind::ParseError, at + ": expected [i, j]");
    pm.matching.edges.push_back({unsigned_at(edges[i][0], at + "[0]"), unsigned_at(edges[i][1], at + "[1]")});
  }
  const json& kind = field(doc, "kind", "$");
  if (kind == "weak") {
    pm.weak = true;
  } else if (kind == "rho") {
    pm.rho = rational_at(field(doc, "rho", "$"), "$.rho");
  } else {
    throw Error(ErrorKind::ParseError, "$.kind: expected \"weak\" or \"rho\"");
  }
  return pm;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, std::string_view text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
}

}  // namespace detsched
