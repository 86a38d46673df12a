#include <math.h>
#include <stdio.h>

#include "zetaheight/zetaheight.h"

int main(void) {
  zh_height h;
  zh_status s = zh_det_interval(1.0, NULL, &h);
  if (s != ZH_OK) {
    fprintf(stderr, "%s: %s\n", zh_status_name(s), zh_last_error());
    return 1;
  }
  if (fabs(h.value + log(2.0)) > 1e-6) {
    fprintf(stderr, "interval determinant %.12f\n", h.value);
    return 1;
  }
  printf("zetaheight %s ok\n", zh_version());
  return 0;
}
