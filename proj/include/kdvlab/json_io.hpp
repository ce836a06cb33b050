#pragma once

#include "kdvlab/ansatz_engine.hpp"
#include "kdvlab/equation_catalog.hpp"
#include "kdvlab/evolver.hpp"
#include "kdvlab/parameter_solver.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kdvlab {

// Minimal JSON document builder with byte-deterministic output: insertion
// order is preserved and every floating-point number is printed with %.17g.
class JsonValue {
public:
    enum class Kind { null, boolean, integer, number, string, array, object };

    JsonValue() = default;
    static JsonValue boolean(bool b);
    static JsonValue integer(long long i);
    static JsonValue number(double d);
    static JsonValue string(std::string s);
    static JsonValue array();
    static JsonValue object();

    JsonValue& set(const std::string& key, JsonValue v); // object append
    JsonValue& push(JsonValue v);                        // array append

    Kind kind() const { return kind_; }
    std::string dump(int indent = 2) const;

private:
    void write(std::string& out, int indent, int depth) const;
    Kind kind_ = Kind::null;
    bool b_ = false;
    long long i_ = 0;
    double d_ = 0;
    std::string s_;
    std::vector<JsonValue> arr_;
    std::vector<std::pair<std::string, JsonValue>> obj_;
};

std::string format_double(double d); // %.17g

JsonValue poly_to_json(const Poly& p);
Poly poly_from_json_text(const std::string& text); // inverse, for tests

JsonValue equation_to_json(const EquationSpec& eq);
JsonValue system_to_json(const ConditionSystem& sys);
JsonValue params_to_json(const SolutionParams& p);
JsonValue verdict_to_json(const ConsistencyVerdict& v, double alpha, double beta);

// Reads solution records from a solve-output document.
std::vector<SolutionParams> params_from_json_file(const std::string& path);

} // namespace kdvlab
