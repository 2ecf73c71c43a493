#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetforge/errors.hpp"
#include "jetforge/hs_engine.hpp"
#include "jetforge/hs_module.hpp"

namespace jetforge {

/// Parse failure with the 1-based position of the offending token.
class ParseError : public Error {
public:
    enum class Kind {
        lexical,
        syntax,
        undeclared_variable,
        inhomogeneous_relation,
        duplicate_declaration,
        missing_declaration,
        invalid_field,
    };

    ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message);

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    static const char* kind_name(Kind kind);

private:
    Kind kind_;
    std::size_t line_, column_;
};

struct NamedPoly {
    std::string name;
    Poly poly;
    std::size_t line = 0;
    std::size_t column = 0;

    friend bool operator==(const NamedPoly& a, const NamedPoly& b) { return a.name == b.name && a.poly == b.poly; }
};

struct ModuleDecl {
    std::uint32_t rank = 0;
    PolyMatrix rows;
    friend bool operator==(const ModuleDecl&, const ModuleDecl&) = default;
};

struct MorphismDecl {
    Field field;
    std::vector<std::string> target_vars;
    std::vector<NamedPoly> target_relations;
    std::vector<Poly> images; ///< one per source variable, in target variables
    friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

/// A parsed input file: one ring with optional grading, its ideal, named
/// test elements, and optional module and morphism declarations.
struct InputDocument {
    Field field;
    std::vector<std::string> vars;
    std::optional<std::vector<std::uint32_t>> grading;
    std::vector<NamedPoly> relations;
    std::vector<NamedPoly> elements;
    std::optional<ModuleDecl> module;
    std::optional<MorphismDecl> morphism;

    AlgebraPresentation algebra() const;
    /// Throws Error if the document declares no module.
    ModulePresentation module_presentation() const;
    AlgebraPresentation target_algebra() const;
    /// Throws Error if the document declares no morphism.
    AlgebraMorphism morphism_map() const;
    VarNames base_names() const { return VarNames{vars, false}; }

    friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

/// `default_field` resolves the field spelled "k".
InputDocument parse_input(std::string_view text, Field default_field = Field::rationals());

/// Canonical text; parse_input(print_document(d)) == d.
std::string print_document(const InputDocument& doc);

/// Field named by JETFORGE_FIELD ("Q" or "F<p>"), Q when unset.
Field default_field_from_env();

} // namespace jetforge
