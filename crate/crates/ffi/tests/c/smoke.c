#include <stdio.h>
#include <string.h>

#include "s1fix.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      const char *e = s1fix_last_error();                             \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,  \
              e ? e : "no error");                                    \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  S1fixSpace *space = NULL;
  CHECK(s1fix_space_parse("toda(2, 1, 0)", &space) == S1FIX_STATUS_OK);
  int64_t chi = 0;
  CHECK(s1fix_space_euler_char(space, &chi) == S1FIX_STATUS_OK);
  CHECK(chi == 4);
  char *ranks = NULL;
  CHECK(s1fix_space_ranks_json(space, &ranks) == S1FIX_STATUS_OK);
  CHECK(strcmp(ranks, "{\"0\":1,\"2\":1,\"4\":1,\"6\":1}") == 0);
  s1fix_string_free(ranks);
  s1fix_space_free(space);

  S1fixAction *action = NULL;
  CHECK(s1fix_action_parse("suspA(rotfree(3))", &action) == S1FIX_STATUS_OK);
  char *type = NULL;
  CHECK(s1fix_action_fixed_type(action, &type) == S1FIX_STATUS_OK);
  CHECK(strcmp(type, "pt ⊔ pt") == 0);
  s1fix_string_free(type);
  s1fix_action_free(action);

  CHECK(s1fix_space_parse("S(", &space) == S1FIX_STATUS_PARSE);
  CHECK(s1fix_last_error() != NULL);

  int64_t alpha = 0, beta = 0;
  CHECK(s1fix_bidegree(S1FIX_MAP_FAMILY_PHI, 2, 0, 0, &alpha, &beta) == S1FIX_STATUS_OK);
  CHECK(alpha == 2 && beta == -1);

  printf("ok %s\n", s1fix_version());
  return 0;
}
