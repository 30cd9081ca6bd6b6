#pragma once

#include "relmon/alg.hpp"

#include <json.hpp>

#include <string>

namespace relmon::io {

/// Keys are kept sorted, which makes every dump byte-stable.
using Json = nlohmann::json;

Json to_json(const FinCategory& c);
CategoryDescription category_description_from_json(const Json& j, const std::string& where);
CatPtr category_from_json(const Json& j, const std::string& where);

Json to_json(const Functor& f);
Functor functor_from_json(const Json& j, const CatPtr& dom, const CatPtr& cod, const std::string& where);

/// Endpoint fields hold category references (roles or file names).
Json to_json(const Distributor& p, const std::string& src_ref, const std::string& tgt_ref);
Distributor distributor_from_json(const Json& j, const CatPtr& src, const CatPtr& tgt, const std::string& where);

Json to_json(const RelativeMonad& t, const std::string& j_ref, const std::string& t_ref);
RelativeMonad monad_from_json(const Json& j, const Functor& root, const Functor& carrier, const std::string& where);

Json to_json(const RelativeAdjunction& a, const std::string& j_ref, const std::string& l_ref, const std::string& r_ref);
RelativeAdjunction adjunction_from_json(const Json& j, const Functor& root, const Functor& l, const Functor& r,
                                        const std::string& where);

/// Category JSON of Alg(T) plus the u_T, f_T functor blocks and the alpha_T table.
Json to_json(const AlgebraCategory& algcat);

/// String field lookup with a located ParseError.
std::string get_string(const Json& j, const std::string& key, const std::string& where);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
std::string dump(const Json& j);

} // namespace relmon::io
