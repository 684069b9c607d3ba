#pragma once

// JSON encodings for every exchanged object. Doubles are written in the
// shortest round-trip form, so identical values always print identically.

#include <string>

#include <json.hpp>

#include "ideal_lab/combinatorics.hpp"
#include "ideal_lab/convergence.hpp"
#include "ideal_lab/partition_regular.hpp"
#include "ideal_lab/realization.hpp"
#include "ideal_lab/souslin.hpp"

namespace ideal_lab {

using Json = nlohmann::ordered_json;

Json to_json(const GenSet& g);
Json to_json(const TreeSeq& s);
Json to_json(const IndexSet& s);
Json index_to_json(IndexDomain d, Index s);
Json to_json(const VerySparseSet& d);
Json to_json(const CertificationReport& r);
Json to_json(const PositivityWitness& w);
Json to_json(const SearchBounds& b);
Json to_json(const LimitWitness& w);
Json to_json(const ClusterWitness& w);
Json to_json(const IdealLimitWitness& w);
Json to_json(const SouslinScheme& s);
Json to_json(const SchemeReport& r);
Json to_json(const BranchPoint& p);
Json to_json(const SequenceWindow& x);
Json to_json(const RealizedSequence& y);
Json to_json(const Claim1Result& c);
Json to_json(const DescentCertificate& c);
Json to_json(const Claim3Result& c);

GenSet gen_set_from_json(const Json& j);
TreeSeq tree_seq_from_json(const Json& j);
Index index_from_json(IndexDomain d, const Json& j);
SouslinScheme scheme_from_json(const Json& j);
/// Accepts a bare SequenceWindow object or a RealizedSequence object.
SequenceWindow sequence_from_json(const Json& j);
LimitWitness limit_witness_from_json(const Json& j);

/// "singleton:c", "finite:a,b,…", "cantor", "rationals", or a path to a JSON file.
SouslinScheme parse_scheme_spec(const std::string& spec);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace ideal_lab
