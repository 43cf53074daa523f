#pragma once

// File formats for algebras, modules and morphisms (JSON documents), plus
// the resolution of algebra references against the builtin catalog.  Parse
// failures throw ParseError citing the file and the line or field; only
// mathematically validated objects leave this layer.

#include "frobmod/module.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace frobmod {

/// Malformed input document (distinct from ValidationError so callers can
/// separate usage errors from mathematical failures).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace io_detail {

using nlohmann::json;

inline std::string line_of_offset(const std::string& text,
                                  std::size_t offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return std::to_string(line);
}

inline json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ":" + line_of_offset(text, e.byte) +
                         ": " + e.what());
    }
}

inline const json& field(const json& doc, const std::string& name,
                         const std::string& path) {
    auto it = doc.find(name);
    if (it == doc.end())
        throw ParseError(path + ": missing field '" + name + "'");
    return *it;
}

inline std::size_t size_field(const json& doc, const std::string& name,
                              const std::string& path) {
    const json& v = field(doc, name, path);
    if (!v.is_number_unsigned())
        throw ParseError(path + ": field '" + name +
                         "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

inline std::vector<Residue> residue_vector(const json& v, std::size_t n,
                                           Residue p,
                                           const std::string& what,
                                           const std::string& path) {
    if (!v.is_array() || v.size() != n)
        throw ParseError(path + ": field '" + what + "' must be an array of " +
                         std::to_string(n) + " residues");
    std::vector<Residue> out;
    out.reserve(n);
    for (const auto& e : v) {
        if (!e.is_number_unsigned() || e.get<std::uint64_t>() >= p)
            throw ParseError(path + ": field '" + what +
                             "' entries must be residues below " +
                             std::to_string(p));
        out.push_back(e.get<Residue>());
    }
    return out;
}

inline Matrix matrix_from_json(const json& v, std::size_t rows,
                               std::size_t cols, Residue p,
                               const std::string& what,
                               const std::string& path) {
    if (!v.is_array() || v.size() != rows)
        throw ParseError(path + ": field '" + what + "' must have " +
                         std::to_string(rows) + " rows");
    Matrix m(p, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = v[r];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(path + ": field '" + what + "' row " +
                             std::to_string(r) + " must have " +
                             std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& e = row[c];
            if (!e.is_number_unsigned() || e.get<std::uint64_t>() >= p)
                throw ParseError(path + ": field '" + what +
                                 "' entries must be residues below " +
                                 std::to_string(p));
            m.at(r, c) = e.get<Residue>();
        }
    }
    return m;
}

} // namespace io_detail

/// Parse an algebra presentation document.  Throws ParseError on malformed
/// input; the returned presentation has not been mathematically validated.
inline AlgebraPresentation read_algebra_presentation(const std::string& path) {
    using io_detail::json;
    json doc = io_detail::parse_file(path);
    AlgebraPresentation pres;
    const std::size_t p64 = io_detail::size_field(doc, "p", path);
    if (p64 == 0 || p64 > 0x7fffffffu)
        throw ParseError(path + ": field 'p' out of range");
    pres.p = Residue(p64);
    pres.dim = io_detail::size_field(doc, "dim", path);
    if (pres.dim == 0)
        throw ParseError(path + ": field 'dim' must be positive");
    pres.structure_constants.assign(pres.dim * pres.dim * pres.dim, 0);
    const json& sc = io_detail::field(doc, "structure_constants", path);
    if (!sc.is_array())
        throw ParseError(path +
                         ": field 'structure_constants' must be an array");
    for (const auto& quad : sc) {
        if (!quad.is_array() || quad.size() != 4)
            throw ParseError(path + ": field 'structure_constants' entries "
                             "must be (i, j, k, value) quadruples");
        std::size_t idx[3];
        for (int t = 0; t < 3; ++t) {
            if (!quad[t].is_number_unsigned() ||
                quad[t].get<std::size_t>() >= pres.dim)
                throw ParseError(path + ": structure constant index out of "
                                 "range in field 'structure_constants'");
            idx[t] = quad[t].get<std::size_t>();
        }
        if (!quad[3].is_number_unsigned() ||
            quad[3].get<std::uint64_t>() >= pres.p)
            throw ParseError(path + ": structure constant value must be a "
                             "residue below " + std::to_string(pres.p));
        pres.structure_constants[(idx[0] * pres.dim + idx[1]) * pres.dim +
                                 idx[2]] = quad[3].get<Residue>();
    }
    pres.unit = io_detail::residue_vector(io_detail::field(doc, "unit", path),
                                          pres.dim, pres.p, "unit", path);
    pres.frobenius_functional = io_detail::residue_vector(
        io_detail::field(doc, "frobenius_functional", path), pres.dim, pres.p,
        "frobenius_functional", path);
    if (doc.contains("basis_names")) {
        const json& names = doc["basis_names"];
        if (!names.is_array() || names.size() != pres.dim)
            throw ParseError(path + ": field 'basis_names' must list " +
                             std::to_string(pres.dim) + " names");
        for (const auto& n : names) {
            if (!n.is_string())
                throw ParseError(path +
                                 ": field 'basis_names' entries must be "
                                 "strings");
            pres.basis_names.push_back(n.get<std::string>());
        }
    }
    if (doc.contains("name")) {
        if (!doc["name"].is_string())
            throw ParseError(path + ": field 'name' must be a string");
        pres.name = doc["name"].get<std::string>();
    } else {
        pres.name = path;
    }
    return pres;
}

/// Parse and mathematically validate an algebra file.
inline AlgebraPtr load_algebra(const std::string& path) {
    return CheckedAlgebra::validate(read_algebra_presentation(path));
}

/// Resolve an algebra reference: a "family(param,param,...)" builtin spec,
/// otherwise a file path.  The builtin catalog environment variable
/// FROBMOD_CATALOG may name a directory searched for "<ref>.json" when the
/// reference is neither.
inline AlgebraPtr resolve_algebra(const std::string& ref) {
    const auto open = ref.find('(');
    if (open != std::string::npos && ref.back() == ')') {
        std::string family = ref.substr(0, open);
        std::string args = ref.substr(open + 1, ref.size() - open - 2);
        std::vector<std::int64_t> params;
        std::stringstream ss(args);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                params.push_back(std::stoll(tok));
            } catch (const std::exception&) {
                throw ParseError("algebra reference '" + ref +
                                 "': parameters must be integers");
            }
        }
        return CheckedAlgebra::validate(builtin_algebra(family, params));
    }
    if (std::ifstream probe(ref); probe) return load_algebra(ref);
    if (const char* catalog = std::getenv("FROBMOD_CATALOG")) {
        std::string candidate = std::string(catalog) + "/" + ref + ".json";
        if (std::ifstream probe(candidate); probe)
            return load_algebra(candidate);
    }
    throw ParseError("algebra reference '" + ref +
                     "': not a builtin spec, a readable file, or a catalog "
                     "entry");
}

/// Parse a module file: { "algebra": <reference>, "dim": n,
/// "action": [d matrices] }.  The representation axioms are verified.
inline ModulePtr load_module(const std::string& path,
                             const AlgebraPtr& override_algebra = nullptr) {
    using io_detail::json;
    json doc = io_detail::parse_file(path);
    AlgebraPtr alg = override_algebra;
    if (!alg) {
        const json& ref = io_detail::field(doc, "algebra", path);
        if (!ref.is_string())
            throw ParseError(path + ": field 'algebra' must be a reference "
                             "string");
        alg = resolve_algebra(ref.get<std::string>());
    }
    const std::size_t n = io_detail::size_field(doc, "dim", path);
    const json& act = io_detail::field(doc, "action", path);
    if (!act.is_array() || act.size() != alg->dim())
        throw ParseError(path + ": field 'action' must list " +
                         std::to_string(alg->dim()) + " matrices");
    std::vector<Matrix> action;
    action.reserve(alg->dim());
    for (std::size_t i = 0; i < alg->dim(); ++i)
        action.push_back(io_detail::matrix_from_json(
            act[i], n, n, alg->modulus(),
            "action[" + std::to_string(i) + "]", path));
    return ModuleRep::make(alg, std::move(action));
}

/// Parse a morphism file: { "algebra": <reference>, "source": <module
/// path>, "target": <module path>, "matrix": [...] }.  The intertwining
/// property is verified on load.
struct MorphismFile {
    AlgebraPtr algebra;
    ModulePtr source, target;
    ModuleHom hom;
};

inline MorphismFile load_morphism(const std::string& path) {
    using io_detail::json;
    json doc = io_detail::parse_file(path);
    const json& ref = io_detail::field(doc, "algebra", path);
    if (!ref.is_string())
        throw ParseError(path + ": field 'algebra' must be a reference "
                         "string");
    AlgebraPtr alg = resolve_algebra(ref.get<std::string>());
    auto module_ref = [&](const char* name) {
        const json& v = io_detail::field(doc, name, path);
        if (!v.is_string())
            throw ParseError(path + ": field '" + std::string(name) +
                             "' must be a module file path");
        return load_module(v.get<std::string>(), alg);
    };
    ModulePtr source = module_ref("source");
    ModulePtr target = module_ref("target");
    Matrix m = io_detail::matrix_from_json(
        io_detail::field(doc, "matrix", path), target->dim(), source->dim(),
        alg->modulus(), "matrix", path);
    try {
        ModuleHom hom(source, target, std::move(m));
        return {std::move(alg), std::move(source), std::move(target),
                std::move(hom)};
    } catch (const ValidationError& e) {
        throw ParseError(path + ": field 'matrix' is not a module morphism (" +
                         e.what() + ")");
    }
}

// ---------------------------------------------------------------------------
// Writers (used by tests and for exporting builtin presentations)
// ---------------------------------------------------------------------------

inline void write_algebra_file(const std::string& path,
                               const AlgebraPresentation& pres) {
    using io_detail::json;
    json doc;
    doc["p"] = pres.p;
    doc["dim"] = pres.dim;
    doc["name"] = pres.name;
    json sc = json::array();
    for (std::size_t i = 0; i < pres.dim; ++i)
        for (std::size_t j = 0; j < pres.dim; ++j)
            for (std::size_t k = 0; k < pres.dim; ++k)
                if (pres.c(i, j, k) != 0)
                    sc.push_back({i, j, k, pres.c(i, j, k)});
    doc["structure_constants"] = sc;
    doc["unit"] = pres.unit;
    doc["frobenius_functional"] = pres.frobenius_functional;
    if (!pres.basis_names.empty()) doc["basis_names"] = pres.basis_names;
    std::ofstream out(path);
    out << doc.dump(2) << "\n";
}

inline void write_module_file(const std::string& path, const ModulePtr& x,
                              const std::string& algebra_ref) {
    using io_detail::json;
    json doc;
    doc["algebra"] = algebra_ref;
    doc["dim"] = x->dim();
    json act = json::array();
    for (std::size_t i = 0; i < x->algebra()->dim(); ++i) {
        json rows = json::array();
        for (std::size_t r = 0; r < x->dim(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < x->dim(); ++c)
                row.push_back(x->action(i).at(r, c));
            rows.push_back(row);
        }
        act.push_back(rows);
    }
    doc["action"] = act;
    std::ofstream out(path);
    out << doc.dump(2) << "\n";
}

inline void write_morphism_file(const std::string& path,
                                const ModuleHom& f,
                                const std::string& algebra_ref,
                                const std::string& source_path,
                                const std::string& target_path) {
    using io_detail::json;
    json doc;
    doc["algebra"] = algebra_ref;
    doc["source"] = source_path;
    doc["target"] = target_path;
    json rows = json::array();
    for (std::size_t r = 0; r < f.matrix().rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < f.matrix().cols(); ++c)
            row.push_back(f.matrix().at(r, c));
        rows.push_back(row);
    }
    doc["matrix"] = rows;
    std::ofstream out(path);
    out << doc.dump(2) << "\n";
}

} // namespace frobmod
