#pragma once

#include "json.hpp"

#include "ergodlab/diagnostics.hpp"
#include "ergodlab/flows.hpp"
#include "ergodlab/joinings.hpp"
#include "ergodlab/lacunary.hpp"
#include "ergodlab/nilflow.hpp"

// JSON forms. Numeric parameters are decimal strings ("0.5") or exact
// rationals ({"p": 1, "q": 3}, integers or digit strings); binary JSON
// floats are rejected so the single ingestion rounding is reproducible.
//
//   flow:   {"variant": "rotation"|"weyl"|"anzai"|"cocycle_skew"|"s_flow"|"heisenberg"|"product",
//            "params": {...}}
//     rotation      {"delta": [frac, ...]}
//     weyl          {"beta": frac, "L": int}
//     anzai         {"alpha": frac}
//     cocycle_skew  {"alpha": frac (optional, defaults to the lacunary alpha), "cocycle": lacunary}
//     s_flow        same as cocycle_skew
//     heisenberg    nil params
//     product       {"specs": [flow, ...]}
//   lacunary: {"K": int, "weights": "unit"|"one_plus_inv"|"inv", "t": decimal, "beta": frac}
//   nil:      {"alpha": frac, "beta": frac, "gamma": frac, "theta_tol": decimal}
//   join:     {"left": flow, "right": flow, "mode": "full_product" | {"fiber": {"left": [i..], "right": [j..]}},
//              "starts": [point, point]}
//   observable: {"kind": "character", "coeffs": [int, ...]} | {"kind": "theta", "tol": decimal, "offset": int}
//               | {"kind": "constant", "re": decimal, "im": decimal}

namespace ergodlab {

using Json = nlohmann::json;

Frac frac_from_json(const Json& j);
/// Exact rational form {"p": "<bits>", "q": "2^128 in decimal"}.
Json frac_to_json(Frac f);

/// A signed real given as a decimal string.
double real_from_json(const Json& j);

TorusPoint point_from_json(const Json& j);
Json point_to_json(const TorusPoint& p);

LacunaryParams lacunary_from_json(const Json& j);
Json lacunary_to_json(const LacunaryParams& p);

NilParams nil_from_json(const Json& j);
Json nil_to_json(const NilParams& p);

FlowSpec flow_from_json(const Json& j);
Json flow_to_json(const FlowSpec& spec);

JoinSpec join_from_json(const Json& j);
Json join_to_json(const JoinSpec& spec);

Observable observable_from_json(const Json& j);

}  // namespace ergodlab
