#pragma once

#include <map>
#include <utility>
#include <vector>

#include "intquant/surd.hpp"
#include "intquant/types.hpp"

namespace intquant {

// Term (coeff, r, s) stands for coeff * pi d_z^r d_zbar^s delta_{center}; the pi
// matches the measure d^2z/pi, so that {(1, 0, 0)} quantizes to rho(center).
struct DeltaTerm {
    cplx coeff;
    int r = 0;
    int s = 0;
};

struct DeltaCombo {
    std::vector<DeltaTerm> terms;
    PhasePoint center{};
};

struct ExactDeltaTerm {
    Surd coeff;
    int r = 0;
    int s = 0;
};
using ExactDeltaCombo = std::vector<ExactDeltaTerm>;

// Sparse operator with exact entries, keyed by (row, column).
using ExactOperator = std::map<std::pair<int, int>, Surd>;

// Rejects repeated (r, s) pairs and negative orders.
void validate(const DeltaCombo& combo);

DeltaCombo to_float(const ExactDeltaCombo& combo);
FockOperator to_fock(const ExactOperator& A, int dim);
ExactOperator projector(int n, int np);  // |e_n><e_np|

// Closed-form quantization. The pure delta term works for any density rho and
// centre; derivative terms need the coherent-state density and centre 0.
FockOperator quantize_delta(const DeltaCombo& combo, const FockOperator& rho, int dim);
ExactOperator quantize_delta_exact(const ExactDeltaCombo& combo);

// T_{n,np}: the combo whose coherent-state quantization is |e_n><e_np|.
ExactDeltaCombo dequantize_rank_one(int n, int np);

// I_Q(A B) = sum <e_n|AB|e_np> T_{n,np}; throws RankCapExceeded if AB has support
// beyond index rank_cap.
DeltaCombo star_product(const FockOperator& A, const FockOperator& B, int rank_cap, double tol = 1e-12);
ExactDeltaCombo star_product_exact(const ExactOperator& A, const ExactOperator& B, int rank_cap);

}  // namespace intquant
