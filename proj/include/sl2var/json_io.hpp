#pragma once

// JSON serialization for every artifact the CLI reads or writes.  All
// output is canonical: object keys sorted (nlohmann's default ordering),
// integers only, two-space indentation; identical inputs give identical
// bytes.

#include <json.hpp>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "sl2var/actions.hpp"
#include "sl2var/linearize.hpp"
#include "sl2var/module_ops.hpp"
#include "sl2var/pbw.hpp"
#include "sl2var/report.hpp"

namespace sl2var {

using Json = nlohmann::json;

class JsonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ----- matrices -----

inline Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j) {
            if (m.at(i, j) < std::numeric_limits<int64_t>::min() ||
                m.at(i, j) > std::numeric_limits<int64_t>::max())
                throw JsonError("matrix entry does not fit a 64-bit integer");
            row.push_back(static_cast<int64_t>(m.at(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntMatrix int_matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw JsonError(where + ": expected an array of rows");
    size_t rows = j.size();
    size_t cols = rows ? j.at(0).size() : 0;
    IntMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!j.at(i).is_array() || j.at(i).size() != cols)
            throw JsonError(where + ": ragged matrix at row " + std::to_string(i));
        for (size_t c = 0; c < cols; ++c) m.at(i, c) = j.at(i).at(c).get<int64_t>();
    }
    return m;
}

// ----- fields, groups, elements, homomorphisms -----

inline Json to_json(const Field& f) {
    Json j;
    j["p"] = f.characteristic();
    j["n"] = f.degree();
    j["modulus"] = f.modulus();
    return j;
}

inline Field field_from_json(const Json& j) {
    if (!j.contains("p") || !j.contains("n")) throw JsonError("field: needs p and n");
    int64_t p = j.at("p").get<int64_t>();
    int n = j.at("n").get<int>();
    if (j.contains("modulus")) return Field::make(p, n, j.at("modulus").get<std::vector<int64_t>>());
    return Field::make(p, n);
}

inline Json to_json(const FinAbGroup& g) {
    Json j;
    j["orders"] = g.orders();
    return j;
}

inline FinAbGroup group_from_json(const Json& j) {
    if (!j.contains("orders")) throw JsonError("group: needs orders");
    return FinAbGroup(j.at("orders").get<std::vector<int64_t>>());
}

inline Json to_json(const GroupElement& e) {
    Json j;
    j["coords"] = e.coords();
    return j;
}

inline Json coords_json(const GroupElement& e) { return Json(e.coords()); }

inline Json to_json(const Homomorphism& h) {
    Json j;
    j["matrix"] = to_json(h.matrix());
    return j;
}

// ----- actions -----

inline Json action_to_json(const GroupAction& a) {
    Json j;
    j["field"] = to_json(a.field());
    j["module"] = to_json(a.module());
    j["kind"] = "group";
    Json basis = Json::array();
    for (const Homomorphism& u : a.u_basis()) basis.push_back(to_json(u.matrix()));
    j["u_basis"] = std::move(basis);
    j["w"] = to_json(a.w().matrix());
    return j;
}

inline Json action_to_json(const LieAction& a) {
    Json j;
    j["field"] = to_json(a.field());
    j["module"] = to_json(a.module());
    j["kind"] = "lie";
    Json xs = Json::array(), ys = Json::array();
    for (const Homomorphism& x : a.x_basis()) xs.push_back(to_json(x.matrix()));
    for (const Homomorphism& y : a.y_basis()) ys.push_back(to_json(y.matrix()));
    j["x_basis"] = std::move(xs);
    j["y_basis"] = std::move(ys);
    return j;
}

struct LoadedAction {
    std::optional<GroupAction> group;
    std::optional<LieAction> lie;

    bool is_group() const { return group.has_value(); }
    const Field& field() const { return group ? group->field() : lie->field(); }
};

/// Parse and fully re-verify an action file; throws JsonError / ActionError.
inline LoadedAction action_from_json(const Json& j) {
    Field f = field_from_json(j.at("field"));
    FinAbGroup v = group_from_json(j.at("module"));
    std::string kind = j.at("kind").get<std::string>();
    auto homs = [&](const Json& arr, const char* what) {
        std::vector<Homomorphism> out;
        for (const Json& m : arr) out.emplace_back(v, v, int_matrix_from_json(m, what));
        return out;
    };
    LoadedAction out;
    if (kind == "group") {
        auto u = homs(j.at("u_basis"), "u_basis");
        Homomorphism w(v, v, int_matrix_from_json(j.at("w"), "w"));
        out.group = GroupAction::from_generators(f, v, std::move(u), std::move(w));
    } else if (kind == "lie") {
        out.lie = LieAction::from_generators(f, v, homs(j.at("x_basis"), "x_basis"),
                                             homs(j.at("y_basis"), "y_basis"));
    } else {
        throw JsonError("kind must be \"group\" or \"lie\"");
    }
    return out;
}

// ----- reports -----

inline Json to_json(const RelationReport& r) {
    Json j;
    j["ok"] = r.ok();
    j["checked"] = r.checked;
    Json fails = Json::array();
    for (const RelationIssue& f : r.failures) {
        Json e;
        e["relation"] = f.relation;
        e["witness"] = f.witness;
        fails.push_back(std::move(e));
    }
    j["failures"] = std::move(fails);
    return j;
}

inline Json to_json(const CheckReport& r) {
    Json j;
    j["check"] = r.name;
    j["status"] = to_string(r.status);
    j["checked"] = r.checked;
    j["notes"] = r.notes;
    return j;
}

inline Json to_json(const Subgroup& s) {
    Json basis = Json::array();
    for (const GroupElement& b : s.canonical_basis()) basis.push_back(coords_json(b));
    return basis;
}

inline Json to_json(const LengthChain& c) {
    Json j;
    if (c.length) j["length"] = *c.length;
    else j["length"] = "infinite";
    Json chain = Json::array();
    for (const Subgroup& z : c.chain) chain.push_back(to_json(z));
    j["chain"] = std::move(chain);
    return j;
}

// ----- certificates -----

inline Json to_json(const LinearizationCertificate& c) {
    const Field& k = c.field;
    Json j;
    j["kind"] = c.kind == ActionKind::Group ? "group" : "lie";
    j["field"] = to_json(k);
    j["module"] = to_json(c.module);
    j["trivial_basis"] = to_json(c.trivial_part);
    Json summands = Json::array();
    for (const NatSummand& s : c.summands) {
        Json e;
        e["a"] = coords_json(s.a);
        e["wa"] = coords_json(s.partner);
        Json table;
        for (int64_t li = 0; li < k.size(); ++li)
            table[k.str(k.element_at(li))] = to_json(s.scalar_table[static_cast<size_t>(li)].matrix());
        e["scalar_table"] = std::move(table);
        summands.push_back(std::move(e));
    }
    j["summands"] = std::move(summands);
    j["iso"] = to_json(c.iso.matrix());
    return j;
}

/// Plain data view of a certificate file: enough to re-emit byte-identically
/// and to re-check the serialized tables against a module.
struct CertificateFile {
    std::string kind;
    Field field;
    FinAbGroup module;
    std::vector<std::vector<int64_t>> trivial_basis;
    struct Summand {
        std::vector<int64_t> a, wa;
        std::vector<IntMatrix> scalar_table;  // in field enumeration order
    };
    std::vector<Summand> summands;
    IntMatrix iso;
};

inline CertificateFile certificate_from_json(const Json& j) {
    CertificateFile c;
    c.kind = j.at("kind").get<std::string>();
    c.field = field_from_json(j.at("field"));
    c.module = group_from_json(j.at("module"));
    for (const Json& b : j.at("trivial_basis"))
        c.trivial_basis.push_back(b.get<std::vector<int64_t>>());
    for (const Json& s : j.at("summands")) {
        CertificateFile::Summand out;
        out.a = s.at("a").get<std::vector<int64_t>>();
        out.wa = s.at("wa").get<std::vector<int64_t>>();
        for (int64_t li = 0; li < c.field.size(); ++li) {
            const std::string key = c.field.str(c.field.element_at(li));
            out.scalar_table.push_back(int_matrix_from_json(s.at("scalar_table").at(key),
                                                            "scalar_table[" + key + "]"));
        }
        c.summands.push_back(std::move(out));
    }
    c.iso = int_matrix_from_json(j.at("iso"), "iso");
    return c;
}

inline Json to_json(const CertificateFile& c) {
    const Field& k = c.field;
    Json j;
    j["kind"] = c.kind;
    j["field"] = to_json(k);
    j["module"] = to_json(c.module);
    Json basis = Json::array();
    for (const auto& b : c.trivial_basis) basis.push_back(Json(b));
    j["trivial_basis"] = std::move(basis);
    Json summands = Json::array();
    for (const auto& s : c.summands) {
        Json e;
        e["a"] = Json(s.a);
        e["wa"] = Json(s.wa);
        Json table;
        for (int64_t li = 0; li < k.size(); ++li)
            table[k.str(k.element_at(li))] = to_json(s.scalar_table[static_cast<size_t>(li)]);
        e["scalar_table"] = std::move(table);
        summands.push_back(std::move(e));
    }
    j["summands"] = std::move(summands);
    j["iso"] = to_json(c.iso);
    return j;
}

// ----- enveloping ring -----

inline Json to_json(const PBWElement& e) {
    Json terms = Json::array();
    for (const auto& [m, c] : e.terms()) {
        Json t;
        t["y"] = m.y;
        t["h"] = m.h;
        t["x"] = m.x;
        if (c < std::numeric_limits<int64_t>::min() || c > std::numeric_limits<int64_t>::max())
            throw JsonError("coefficient does not fit a 64-bit integer");
        t["coeff"] = static_cast<int64_t>(c);
        terms.push_back(std::move(t));
    }
    Json j;
    j["terms"] = std::move(terms);
    return j;
}

/// Canonical dump: sorted keys, two-space indent, newline-terminated.
inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sl2var
