#pragma once

// JSON and CSV forms of every artifact. Objects are written with sorted keys
// and no floating-point values in certificates, so equal inputs give
// byte-identical files.

#include <string>
#include <vector>

#include <json.hpp>

#include "rep2ldc/bounds.hpp"
#include "rep2ldc/construct.hpp"
#include "rep2ldc/fixtures.hpp"

namespace rep2ldc {

using Json = nlohmann::json;

Json field_to_json(const FieldSpec& field);
FieldSpec field_from_json(const Json& j);

/// Residues for GF(p); integers or "a/b" strings for Q.
template <typename Scalar>
Json scalar_to_json(const Field<Scalar>& field, const Scalar& x);
Rational rational_from_json(const Json& j);

template <typename Scalar>
Json vector_to_json(const Field<Scalar>& field, const Vector<Scalar>& v);
template <typename Scalar>
Vector<Scalar> vector_from_json(const Field<Scalar>& field, const Json& j);

/// {"field": {"char": p}, "rows": r, "cols": c, "entries": [[...], ...]}
template <typename Scalar>
Json matrix_to_json(const Field<Scalar>& field, const Matrix<Scalar>& m);
/// Accepts the object form or a bare array of rows.
Matrix<Rational> matrix_from_json(const Json& j);
template <typename Scalar>
Matrix<Scalar> matrix_from_json(const Field<Scalar>& field, const Json& j);

Json group_spec_to_json(const GroupSpec& spec);
GroupSpec group_spec_from_json(const Json& j);
/// SHA-256 (hex) of the canonical group-spec JSON.
std::string group_spec_hash(const GroupSpec& spec);

/// Element list with generator words.
template <typename Scalar>
Json enumeration_to_json(const MatrixGroup<Scalar>& group);

Json fixture_to_json(const Fixture& fixture);

template <typename Scalar>
Json ldc_to_json(const Field<Scalar>& field, const LdcInstance<Scalar>& code);
template <typename Scalar>
LdcInstance<Scalar> ldc_from_json(const Field<Scalar>& field, const Json& j);

Json report_to_json(const VerificationReport& report);
Json bound_reports_to_json(const std::vector<BoundReport>& reports);
std::string bound_reports_to_csv(const std::vector<BoundReport>& reports);
Json audit_to_json(const EntropyAudit& audit);
Json cert_report_to_json(const CertReport& report);

template <typename Scalar>
Json cert_to_json(const GroupSpec& spec, const MatrixGroup<Scalar>& group, const ConstructionCert<Scalar>& cert);
/// Rebuilds a certificate against an already closed group.
template <typename Scalar>
ConstructionCert<Scalar> cert_from_json(const MatrixGroup<Scalar>& group, const Json& j);

/// Parse errors (syntax or schema) are reported as Error(Parse).
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);
void write_text_file(const std::string& path, const std::string& text);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace rep2ldc
