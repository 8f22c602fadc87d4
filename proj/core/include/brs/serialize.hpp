#pragma once

#include <filesystem>
#include <string>

#include "brs/cutproject.hpp"
#include "brs/dynamics.hpp"
#include "brs/region.hpp"

namespace brs {

/// Basis files carry only integer coordinates and the original alpha decimal
/// strings, so they are exact and precision-independent.
std::string basis_to_json(const SpecialBasis& basis);
SpecialBasis basis_from_json(const std::string& text, mpfr_prec_t precision_bits);

std::string scheme_to_json(const Scheme& scheme);
Scheme scheme_from_json(const std::string& text, mpfr_prec_t precision_bits);

/// Combined report: the (S1)-(S4) conditions plus Rauzy entries when given.
std::string report_to_json(const ConditionReport* conditions, const RauzyReport* rauzy);

std::string trace_to_csv(const RemainderTrace& trace);
std::string returns_to_csv(const ReturnSequence& seq);
std::string points_to_csv(const PointSet& points);
std::string pairing_to_csv(const BdPairing& pairing);

/// Writes via a temporary file in the same directory plus rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace brs
