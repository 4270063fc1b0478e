#pragma once

#include <optional>
#include <vector>

#include "nilherm/algebra.hpp"

namespace nilherm {

/// Built-in algebra with its known ground truth. The expected flags are
/// asserted by the test suite; `balancedFeasible`/`sktFeasible` record
/// whether a metric of that kind exists at all (not whether the search can
/// certify the negative cases).
struct CatalogEntry {
    std::string name;
    ComplexNilAlgebra algebra;
    std::string provenance;
    bool skt_feasible;
    bool balanced_feasible;
    bool abelian;
};

/// The six built-in algebras: torus, kodaira-thurston, iwasawa, h3-plus-r3,
/// balanced-not-skt-6d, skt-not-balanced-6d.
const std::vector<CatalogEntry>& builtin_catalog();

const CatalogEntry* find_catalog_entry(const std::string& name);

}  // namespace nilherm
