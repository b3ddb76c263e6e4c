#pragma once

// JSON encodings (schema v1, documented in docs/schema.md). Complex numbers
// are [re, im] pairs; all keys are snake_case. Round-trip stable.

#include <cmath>
#include <optional>
#include <string>

#include <json.hpp>

#include "gevrey/classifier.hpp"
#include "gevrey/counterexamples.hpp"
#include "gevrey/evolution.hpp"
#include "gevrey/operator_calculus.hpp"
#include "gevrey/region.hpp"
#include "gevrey/spectrum.hpp"
#include "gevrey/state_vector.hpp"

namespace gevrey {

using Json = nlohmann::json;

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidSpecError("complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

/// Finite doubles pass through; non-finite values encode as null.
inline Json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

// --- spectra ---------------------------------------------------------------

inline Json to_json(const PowerLawSpectrum& p) {
    const char* sign = p.im_sign == ImSignPattern::Plus    ? "plus"
                       : p.im_sign == ImSignPattern::Minus ? "minus"
                                                           : "alternating";
    return Json{{"kind", "powerlaw"},     {"re_sign", p.re_sign}, {"re_coef", p.re_coef},
                {"re_exp", p.re_exp},     {"im_coef", p.im_coef}, {"im_exp", p.im_exp},
                {"im_sign", sign},        {"offset", to_json(p.offset)}};
}

inline PowerLawSpectrum power_law_from_json(const Json& j) {
    PowerLawSpectrum p;
    p.re_sign = j.at("re_sign").get<int>();
    p.re_coef = j.at("re_coef").get<double>();
    p.re_exp = j.at("re_exp").get<double>();
    p.im_coef = j.at("im_coef").get<double>();
    p.im_exp = j.at("im_exp").get<double>();
    std::string s = j.at("im_sign").get<std::string>();
    if (s == "plus")
        p.im_sign = ImSignPattern::Plus;
    else if (s == "minus")
        p.im_sign = ImSignPattern::Minus;
    else if (s == "alternating")
        p.im_sign = ImSignPattern::Alternating;
    else
        throw InvalidSpecError("im_sign must be plus, minus, or alternating");
    if (j.contains("offset")) p.offset = complex_from_json(j.at("offset"));
    return p;
}

inline Json to_json(const SpectrumSpec& s) {
    if (auto* f = std::get_if<FiniteSpectrum>(&s.variant())) {
        Json pts = Json::array();
        for (auto z : f->points) pts.push_back(to_json(z));
        return Json{{"kind", "finite"}, {"points", pts}};
    }
    if (auto* p = std::get_if<PowerLawSpectrum>(&s.variant())) return to_json(*p);
    const auto& sm = std::get<SampledSpectrum>(s.variant());
    Json pts = Json::array();
    for (auto z : sm.points) pts.push_back(to_json(z));
    Json tail = sm.tail ? to_json(*sm.tail) : Json(nullptr);
    return Json{{"kind", "sampled"}, {"points", pts}, {"tail", tail}};
}

inline SpectrumSpec spectrum_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite") {
        std::vector<Complex> pts;
        for (const auto& e : j.at("points")) pts.push_back(complex_from_json(e));
        return SpectrumSpec::finite(std::move(pts));
    }
    if (kind == "powerlaw") return SpectrumSpec::power_law(power_law_from_json(j));
    if (kind == "sampled") {
        std::vector<Complex> pts;
        for (const auto& e : j.at("points")) pts.push_back(complex_from_json(e));
        std::optional<PowerLawSpectrum> tail;
        if (j.contains("tail") && !j.at("tail").is_null())
            tail = power_law_from_json(j.at("tail"));
        return SpectrumSpec::sampled(std::move(pts), std::move(tail));
    }
    throw InvalidSpecError("spectrum kind must be finite, powerlaw, or sampled");
}

// --- state vectors ----------------------------------------------------------

inline Json to_json(const StateVector& v) {
    if (auto* f = std::get_if<FiniteCoeffs>(&v.coeffs())) {
        Json cs = Json::array();
        for (auto z : f->values) cs.push_back(to_json(z));
        return Json{{"kind", "finite"},
                    {"coeffs", cs},
                    {"truncation", v.truncation_n()},
                    {"tail_bound_l2", number_or_null(v.tail_bound_l2())}};
    }
    const auto& c = std::get<ClosedFormCoeffs>(v.coeffs());
    return Json{{"kind", "closed_form"},
                {"amplitude", c.amplitude},
                {"power", c.power},
                {"exp_coef", c.exp_coef},
                {"exp_power", c.exp_power},
                {"truncation", v.truncation_n()},
                {"tail_bound_l2", number_or_null(v.tail_bound_l2())}};
}

inline StateVector state_vector_from_json(const Json& j, std::int64_t default_truncation =
                                                             kDefaultTruncation) {
    std::string kind = j.at("kind").get<std::string>();
    std::int64_t trunc = j.contains("truncation") ? j.at("truncation").get<std::int64_t>()
                                                  : default_truncation;
    if (kind == "finite") {
        std::vector<Complex> cs;
        for (const auto& e : j.at("coeffs")) cs.push_back(complex_from_json(e));
        return StateVector::finite(std::move(cs));
    }
    if (kind == "closed_form") {
        ClosedFormCoeffs c;
        c.amplitude = j.value("amplitude", 1.0);
        c.power = j.value("power", 0.0);
        c.exp_coef = j.value("exp_coef", 0.0);
        c.exp_power = j.value("exp_power", 1.0);
        return StateVector::closed_form(c, trunc);
    }
    throw InvalidSpecError("vector kind must be finite or closed_form");
}

// --- verdicts ----------------------------------------------------------------

inline Json to_json(const ClassificationVerdict& v) {
    Json w(nullptr);
    if (v.witness_b_minus || v.witness_b_plus) {
        w = Json::object();
        if (v.witness_b_minus) w["b_minus"] = *v.witness_b_minus;
        if (v.witness_b_plus) w["b_plus"] = *v.witness_b_plus;
    }
    return Json{{"holds", v.holds},
                {"beta", v.beta},
                {"type", to_string(v.type)},
                {"method", to_string(v.method)},
                {"witness", w},
                {"refutation", v.refutation.empty() ? Json(nullptr) : Json(v.refutation)}};
}

inline Json to_json(const BoundednessVerdict& v) {
    return Json{{"bounded", v.bounded},
                {"method", to_string(v.method)},
                {"escape_witness", v.escape_witness ? to_json(*v.escape_witness) : Json(nullptr)},
                {"radius_checked", number_or_null(v.radius_checked)}};
}

inline Json to_json(const DomainVerdict& v) {
    return Json{{"in_domain", to_string(v.in_domain)},
                {"method", to_string(v.method)},
                {"partial_sums", v.partial_sums},
                {"certificate", v.certificate}};
}

inline Json to_json(const OrderEstimate& e) {
    return Json{{"beta_hat", e.divergent ? Json(nullptr) : number_or_null(e.beta_hat)},
                {"window_lo", e.window_lo},
                {"window_hi", e.window_hi},
                {"regression_residual",
                 e.divergent ? Json(nullptr) : number_or_null(e.regression_residual)},
                {"divergent", e.divergent}};
}

inline Json to_json(const GrowthTable& g) {
    Json rows = Json::array();
    for (const auto& r : g.rows)
        rows.push_back(Json{{"n", r.n},
                            {"t", r.t},
                            {"norm", number_or_null(r.norm)},
                            {"tail_bound", number_or_null(r.tail_bound)}});
    return rows;
}

inline Json to_json(const AdversarialCase& c) {
    return Json{{"kind", to_string(c.kind)},
                {"variant", to_string(c.variant)},
                {"beta", c.beta},
                {"b_minus", c.b_minus ? Json(*c.b_minus) : Json(nullptr)},
                {"spectrum", to_json(c.eigenvalues)},
                {"vector", to_json(c.vector)},
                {"witness_functional", to_json(c.witness_functional)}};
}

}  // namespace gevrey
