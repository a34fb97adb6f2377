#include "vasnet/limiter.hpp"

#include "vasnet/errors.hpp"

namespace vasnet {

double limiter_weight(Limiter lim, double theta) {
  switch (lim) {
    case Limiter::minmod: return limiter_weight<Limiter::minmod>(theta);
    case Limiter::van_leer: return limiter_weight<Limiter::van_leer>(theta);
    case Limiter::mc: return limiter_weight<Limiter::mc>(theta);
    case Limiter::upwind: return limiter_weight<Limiter::upwind>(theta);
    case Limiter::lax_wendroff: return limiter_weight<Limiter::lax_wendroff>(theta);
  }
  return 0.0;
}

Limiter parse_limiter(std::string_view name) {
  if (name == "minmod") return Limiter::minmod;
  if (name == "vanleer" || name == "van_leer") return Limiter::van_leer;
  if (name == "mc") return Limiter::mc;
  if (name == "upwind") return Limiter::upwind;
  if (name == "laxwendroff" || name == "lax_wendroff") return Limiter::lax_wendroff;
  throw ConfigError("unknown limiter '" + std::string(name) + "'");
}

std::string to_string(Limiter lim) {
  switch (lim) {
    case Limiter::minmod: return "minmod";
    case Limiter::van_leer: return "vanleer";
    case Limiter::mc: return "mc";
    case Limiter::upwind: return "upwind";
    case Limiter::lax_wendroff: return "laxwendroff";
  }
  return "?";
}

}  // namespace vasnet
