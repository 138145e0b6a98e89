// Z_2-classification of primitive nonsingular ternary forms. Classes are kept
// in a database generated from the complete table of 2-adic symbols, masses
// and isotropy flags for determinant classes 2^(2u+v) d0; an arbitrary form is
// classified by matching computable invariants (Jordan profile, determinant
// class, Hasse invariant, local representation profile) against the database.
#ifndef TQF_LOCAL2_HH
#define TQF_LOCAL2_HH

#include "tqf/padic.hpp"

#include <map>
#include <memory>

namespace tqf {

struct Jordan2Block {
    int scale = 0;
    std::vector<int> units;  // odd diagonal entries mod 8
    std::vector<int> vkinds; // 1 for V1 = [[0,1],[1,0]], 2 for V2 = [[2,1],[1,2]]
    int dim() const { return (int)units.size() + 2 * (int)vkinds.size(); }
};

struct Jordan2 {
    std::vector<Jordan2Block> blocks; // scales strictly increasing
    int u = 0, v = 0;                 // v_2(det) = 2u + v
    std::vector<int> even_scales() const;
};

Jordan2 jordan_split_2(const TernaryForm& f);

struct Local2Class {
    int u = 0, v = 0, d0 = 1; // determinant class 2^(2u+v) d0, d0 in {1,3,5,7}
    TernaryForm rep;
    QQ mass; // Conway-Sloane 2-mass m_2
    bool iso = false;
    int hasse = 1;
    std::string sym;              // 2-adic symbol string
    bool derived_symbol = false;  // true when obtained by d0-scaling, not tabulated
    std::vector<int> ii_scales;   // scales of the even (type II) constituents
    int aut2 = 1;                 // 2-adically automorphous square classes (8-bit set)
    // represented unit classes: rep_units[t] = bitmask over {1,3,5,7} of units
    // w with 2^t w locally represented (filled lazily)
    mutable std::vector<int> rep_units;

    int rep_units_at(int t) const;
};

// all classes of determinant class 2^(2u+v) d0 with the given (u, v)
const std::vector<Local2Class>& local2_cell(int u, int v, int d0);

// all classes of determinant class 2^k d0 (union over 2u + v = k)
std::vector<const Local2Class*> local2_classes_of_det(int k, int d0);

// identify the Z_2-class of a primitive nonsingular form
const Local2Class& classify2(const TernaryForm& f);

// decide Z_2-equivalence by lifting a transformation digit by digit; sound and
// complete (congruence to depth 2 v_2(det) + 8 with unit determinant forces
// exact equivalence). 1 = equivalent, 0 = inequivalent, -1 = budget exhausted.
int equivalent2_budget(const TernaryForm& f, const TernaryForm& g, long node_budget);
bool equivalent2(const TernaryForm& f, const TernaryForm& g);

// group of 2-adically automorphous square classes (spinor norms of the
// integral special orthogonal group), encoded as an 8-bit set over Sq*(Q_2);
// element code = unit_bits(u) | (v_2 parity << 2) with unit bits
// 1 -> 00, 3 -> 01, 7 -> 10, 5 -> 11
int automorphous2(const TernaryForm& f);
int sq2_code(const ZZ& n);

// count table h_2-style: number of classes with v_2(det) = k per unit class d0
long local2_count(int k, int d0);

} // namespace tqf

#endif
