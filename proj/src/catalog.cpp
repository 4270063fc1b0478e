#include "nilherm/catalog.hpp"

namespace nilherm {

namespace {

using Key = ComplexNilAlgebra::Key;

ExactComplex rc(long re, long im = 0) { return {Rational(re), Rational(im)}; }

std::vector<CatalogEntry> make_catalog() {
    std::vector<CatalogEntry> cat;

    cat.push_back({"torus",
                   ComplexNilAlgebra(3, "torus", {}, {}),
                   "abelian algebra of the complex 3-torus",
                   true, true, true});

    cat.push_back({"kodaira-thurston",
                   ComplexNilAlgebra(2, "kodaira-thurston", {},
                                     {{Key{2, 1, 1}, rc(1)}}),
                   "Kodaira-Thurston surface: d alpha^2 = alpha^{1 1bar}",
                   true, false, false});

    cat.push_back({"iwasawa",
                   ComplexNilAlgebra(3, "iwasawa", {{Key{3, 1, 2}, rc(1)}}, {}),
                   "Iwasawa manifold: d alpha^3 = alpha^{12}",
                   false, true, false});

    // real Heisenberg h3 plus R^3 with the complex structure pairing the
    // center with a flat direction; k = 1 with a single (1,1) constant
    cat.push_back({"h3-plus-r3",
                   ComplexNilAlgebra(3, "h3-plus-r3", {},
                                     {{Key{2, 1, 1}, ExactComplex{Rational(0), Rational(-1) / 2}}}),
                   "h3 + R^3: d alpha^2 = -(i/2) alpha^{1 1bar}",
                   true, false, false});

    cat.push_back({"balanced-not-skt-6d",
                   ComplexNilAlgebra(3, "balanced-not-skt-6d", {},
                                     {{Key{3, 1, 1}, rc(1)}, {Key{3, 2, 2}, rc(-1)}}),
                   "d alpha^3 = alpha^{1 1bar} - alpha^{2 2bar}: trace-free (1,1) constants",
                   false, true, false});

    cat.push_back({"skt-not-balanced-6d",
                   ComplexNilAlgebra(3, "skt-not-balanced-6d", {},
                                     {{Key{3, 1, 1}, rc(1)},
                                      {Key{3, 1, 2}, rc(1)},
                                      {Key{3, 2, 1}, rc(1)},
                                      {Key{3, 2, 2}, rc(1)}}),
                   "d alpha^3 = rank-one (1,1) block with nonzero trace",
                   true, false, false});

    return cat;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> cat = make_catalog();
    return cat;
}

const CatalogEntry* find_catalog_entry(const std::string& name) {
    for (const auto& e : builtin_catalog())
        if (e.name == name) return &e;
    return nullptr;
}

}  // namespace nilherm
