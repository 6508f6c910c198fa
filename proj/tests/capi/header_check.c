/* Compiled as C to keep the public header free of C++-only constructs. */
#include "maale/maale.h"

int maale_c_header_smoke(void) {
  maale_env* env = 0;
  int players = 0;
  if (maale_env_load("pong", &env) != MAALE_OK) return -1;
  maale_env_num_players(env, &players);
  maale_env_free(env);
  return players;
}
