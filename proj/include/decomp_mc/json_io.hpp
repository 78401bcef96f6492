#pragma once

#include <string>

#include "json.hpp"

#include "decomp_mc/bounds.hpp"
#include "decomp_mc/chain.hpp"
#include "decomp_mc/decomp.hpp"
#include "decomp_mc/spectral.hpp"
#include "decomp_mc/zoo.hpp"

namespace decomp_mc {

using Json = nlohmann::ordered_json;

// Chain file format: {"labels": [...optional...], "P": [[row-major reals]],
// "pi": [optional reals]}.  Doubles round-trip losslessly.
Json chain_to_json(const ReversibleChain& chain);
ReversibleChain chain_from_json(const Json& j);

// Partition file format: {"block_of": [int, ...]}.
Json partition_to_json(const Partition& part);
Partition partition_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json spectral_certificate_to_json(const SpectralCertificate& cert);
Json lsob_certificate_to_json(const LsobCertificate& cert);
Json bound_to_json(const BoundResult& res);
Json decomposition_to_json(const DecompositionReport& rep);
Json zoo_instance_to_json(const ZooInstance& inst);

std::string dump_json(const Json& j);
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// key1.key2[3].value,1.25 lines for --format csv
std::string flatten_csv(const Json& j);

}  // namespace decomp_mc
