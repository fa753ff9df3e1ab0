#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>
#include "fqco/problem.hpp"

namespace fqco {

/// Problem documents look like
///
///   {
///     "n": 3,
///     "objective": {"Q": [[0,-1,0],[-1,0,0],[0,0,0]], "c": [-2,-5,-3], "a": 0},
///     "equalities": [{"c": [-1,-3,-1], "a": 1}],
///     "inequalities": [],
///     "default_gamma": 3
///   }
///
/// Q is dense and row-major, either as nested rows or as a flat list of
/// n*n numbers, and must be symmetric. Omitted Q, c or a are zero; omitted
/// constraint lists are empty. Throws ParseError with the byte offset for
/// malformed JSON and the JSON pointer of the offending field otherwise.
QcboProblem parse_problem_json(std::string_view text);
QcboProblem load_problem(const std::filesystem::path& path);

nlohmann::json polynomial_to_json(const BinaryPolynomial& p);
nlohmann::json problem_to_json(const QcboProblem& p);

}  // namespace fqco
