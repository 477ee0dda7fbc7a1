#pragma once

#include <string>
#include <string_view>

#include "detsched/model.hpp"
#include "detsched/oracle.hpp"
#include "detsched/pseudomatching.hpp"

namespace detsched {

// Documents are JSON text. Rationals are quoted "p" or "p/q" strings; bare
// numbers and decimal points are rejected so values stay exact. Unknown keys
// are ignored.
//
//   instance: {"beta":"1","jobs":[{"id":1,"alpha":"5","release":"0"}]}
//   schedule: {"order":[2,1],"starts":["2","5"]}

/// Throws ParseError naming the offending field, then validates the result
/// (BetaNonPositive, NegativeParameter, ...).
Instance parse_instance(std::string_view text);
std::string write_instance(const Instance& instance);

/// Without "starts" the order is started canonically; with them the
/// schedule is checked for feasibility (InfeasibleSchedule, NotAPermutation).
Schedule parse_schedule(std::string_view text, const Instance& instance);
std::string write_schedule(const Schedule& schedule);

std::string write_eval_report(const EvalReport& report);
std::string write_opt_result(const OptResult& result);
std::string write_pm_report(const PmConstructionReport& report);

/// Standalone pseudomatching check document:
///   {"beta":"1","n":2,"a":[{"index":2,"value":"1"}],"o":[{"index":1,"value":"2"}],
///    "edges":[[2,1]],"kind":"weak"}
/// `kind` is "weak" or "rho" (then "rho" holds the multiplicity bound).
struct PmDocument {
  BoundingSets sets;
  Pseudomatching matching;
  bool weak = false;
  Rational rho{1};
};

PmDocument parse_pm_document(std::string_view text);

/// Reads a whole file; throws IoError.
std::string read_file(const std::string& path);
/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, std::string_view text);

}  // namespace detsched
