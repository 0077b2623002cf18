#pragma once

// JSON and CSV exchange formats. Rationals travel as "num/den" strings.

#include "hspec/collect.hpp"
#include "hspec/hdim.hpp"
#include "hspec/lattice.hpp"
#include "hspec/mixedlie.hpp"
#include "hspec/spectra.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hspec::io {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& x);
Rational rational_from_json(const Json& j);
/// Big integers as decimal strings.
Json bigint_json(const BigInt& x);

Json graded_subspace_json(const fplie::GradedSubspace& m);
Json mixed_subspace_json(const mixedlie::MixedGradedSubspace& h, const mixedlie::MixedLieAlgebra& algebra);
Json generators_json(const std::vector<mixedlie::GeneralizedBasicCommutator>& gens, const fplie::HallBasis& basis);
/// Header n,l_circ,partial_dim,lower_bound,ratio,added,stalled.
std::string trace_csv(const mixedlie::DensityConstruction& c);
Json trace_json(const mixedlie::DensityConstruction& c);

Json normal_form_json(const collect::NormalForm& nf, const fplie::HallBasis& basis);
Json phi_report_json(const collect::PhiCorrespondenceReport& r);

enum class ValueKind { exact, window };
Json verdict_json(const Rational& value, ValueKind kind);
Json verdict_json(const hdim::WindowVerdict& v);
/// Header i,numerator,denominator,ratio; the ratio column is a float for plotting.
std::string logindex_csv(const hdim::LogIndexSequence& seq);
Json logindex_json(const hdim::LogIndexSequence& seq);

Json lattice_json(const lattice::PadicLattice& l);
lattice::RationalMatrix matrix_from_json(const Json& j);
lattice::PadicLattice lattice_from_json(const Json& j);
lattice::GroupAction action_from_json(const Json& j);

/// {p, X: ["0","1/2","1"], gaps: {mode: tower|geometric|explicit, base, values}, i_max}.
spectra::Zp2Filtration filtration_from_json(const Json& j);
Json filtration_config_json(const spectra::Zp2Filtration& f);
Json filtration_json(const spectra::Zp2Filtration& f);
Json subgroup_json(const spectra::RationalSubgroupSpec& h);
spectra::RationalSubgroupSpec subgroup_from_json(const Json& j, std::uint64_t p);
Json scan_report_json(const spectra::ScanReport& r, const spectra::SpectrumTarget& target);
/// Header sample,class,i,ratio for plotting.
std::string scan_csv(const spectra::ScanReport& r);

}  // namespace hspec::io
